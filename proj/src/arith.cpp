#include "isoq/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <random>

namespace isoq {

Place Place::finite(const Int& p) {
  if (!is_prime(p)) throw InputError("place is not a prime: " + p.get_str());
  Place v;
  v.prime_ = p;
  return v;
}

Place Place::parse(std::string_view text) {
  if (text == "inf") return real();
  Int p;
  if (text.empty() || p.set_str(std::string(text), 10) != 0)
    throw InputError("bad place: " + std::string(text));
  return finite(p);
}

const Int& Place::prime() const {
  if (is_real()) throw std::logic_error("real place has no prime");
  return prime_;
}

std::string Place::to_string() const { return is_real() ? "inf" : prime_.get_str(); }

Rat parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  Int num, den = 1;
  auto ok = [](Int& out, const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return out.set_str(part[0] == '+' ? part.substr(1) : part, 10) == 0;
  };
  if (slash == std::string::npos) {
    if (!ok(num, s)) throw InputError("bad rational: " + s);
  } else {
    if (!ok(num, s.substr(0, slash)) || !ok(den, s.substr(slash + 1)) || den == 0)
      throw InputError("bad rational: " + s);
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rat& a) { return a.get_str(); }

// ---------------------------------------------------------------- primality

namespace {

bool miller_rabin_round(const Int& n, const Int& d, unsigned s, const Int& a) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Bases that make Miller-Rabin deterministic below 3.3e24.
constexpr std::array<unsigned, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
const Int kDeterministicLimit("3317044064679887385961981");

constexpr std::array<unsigned, 25> kSmallPrimes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x5eed);
  Int tmp;
  // z <- z^2 + c mod n, in place to avoid temporaries in the hot loop.
  auto step = [&](Int& z, const Int& c) {
    mpz_mul(tmp.get_mpz_t(), z.get_mpz_t(), z.get_mpz_t());
    mpz_add(tmp.get_mpz_t(), tmp.get_mpz_t(), c.get_mpz_t());
    mpz_mod(z.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
  };
  auto absdiff = [&](const Int& a, const Int& b) {
    mpz_sub(tmp.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_abs(tmp.get_mpz_t(), tmp.get_mpz_t());
  };
  for (;;) {
    Int y = Int(static_cast<unsigned long>(rng() % 1000003)) % n;
    const Int c = Int(static_cast<unsigned long>(rng() % 1000003 + 1)) % n;
    const unsigned long m = 128;
    unsigned long r = 1;
    Int g = 1, q = 1, x, ys;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y, c);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < m && k < r; ++i, ++k) {
          step(y, c);
          absdiff(x, y);
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), tmp.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys, c);
        absdiff(x, ys);
        mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Pollard-Brent splits are memoized: congruent Gram matrices share the hard
// cofactors of their determinant, and whole batches revisit them.
Int cached_split(const Int& n) {
  static std::mutex mutex;
  static std::map<Int, Int> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Int d = pollard_brent(n);
  std::lock_guard lock(mutex);
  if (cache.size() >= 4096) cache.clear();
  cache.emplace(n, d);
  return d;
}

void split_into(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const Int d = cached_split(n);
  split_into(d, out);
  split_into(Int(n / d), out);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n >= kDeterministicLimit) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  Int d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned a : kWitnesses)
    if (!miller_rabin_round(n, d, s, Int(a))) return false;
  return true;
}

std::vector<std::pair<Int, int>> factor_integer(const Int& n_in) {
  if (n_in == 0) throw std::domain_error("factor_integer(0)");
  Int n = abs(n_in);
  std::map<Int, int> acc;
  for (unsigned p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
    if (Int(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++acc[Int(p)];
    }
  }
  split_into(n, acc);
  return {acc.begin(), acc.end()};
}

std::vector<Int> coprime_base(const std::vector<Int>& values) {
  std::vector<Int> base;
  for (auto& v : values) {
    Int a = abs(v);
    if (a > 1) base.push_back(a);
  }
  // Replace any non-coprime pair {a, b} by {g, a/g, b/g}; the product of the
  // list only shrinks, so this terminates.
  for (bool changed = true; changed;) {
    changed = false;
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        Int g;
        mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
        if (g == 1) continue;
        Int a = base[i] / g, b = base[j] / g;
        base.erase(base.begin() + static_cast<long>(j));
        base.erase(base.begin() + static_cast<long>(i));
        for (Int* part : {&g, &a, &b})
          if (*part > 1) base.push_back(*part);
        changed = true;
      }
  }
  return base;
}

std::vector<Int> prime_support(const Rat& a) {
  std::vector<Int> out;
  if (a == 0) return out;
  for (auto& [p, e] : factor_integer(a.get_num())) out.push_back(p);
  for (auto& [p, e] : factor_integer(a.get_den())) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Int next_prime(const Int& n) {
  Int c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

// ---------------------------------------------------------------- symbols

int valuation(const Int& a, const Int& p) {
  if (a == 0) throw InfiniteValuation();
  return static_cast<int>(mpz_remove(Int().get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

int valuation(const Rat& a, const Int& p) {
  if (a == 0) throw InfiniteValuation();
  return valuation(a.get_num(), p) - valuation(a.get_den(), p);
}

Rat unit_part(const Rat& a, const Int& p) {
  Int num, den;
  mpz_remove(num.get_mpz_t(), a.get_num_mpz_t(), p.get_mpz_t());
  mpz_remove(den.get_mpz_t(), a.get_den_mpz_t(), p.get_mpz_t());
  return Rat(num, den);
}

int legendre(const Int& a, const Int& p) {
  if (p == 2) throw std::domain_error("legendre: p must be odd");
  Int r = a % p;
  if (r < 0) r += p;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

Int residue(const Rat& a, const Int& m) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_den_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("residue: denominator not invertible");
  Int r = a.get_num() * inv % m;
  if (r < 0) r += m;
  return r;
}

Symbol hilbert(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert: zero argument");
  if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? Symbol::minus : Symbol::plus;
  const Int& p = v.prime();
  const int alpha = valuation(a, p), beta = valuation(b, p);
  const Rat u = unit_part(a, p), w = unit_part(b, p);
  if (p == 2) {
    const unsigned long ur = residue(u, Int(8)).get_ui(), wr = residue(w, Int(8)).get_ui();
    auto eps = [](unsigned long x) { return ((x - 1) / 2) & 1UL; };
    auto omega = [](unsigned long x) { return ((x * x - 1) / 8) & 1UL; };
    const unsigned long e = eps(ur) * eps(wr) + static_cast<unsigned long>(alpha & 1) * omega(wr) +
                            static_cast<unsigned long>(beta & 1) * omega(ur);
    return (e & 1UL) ? Symbol::minus : Symbol::plus;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && p % 4 == 3) s = -s;
  if (beta & 1) s *= legendre(residue(u, p), p);
  if (alpha & 1) s *= legendre(residue(w, p), p);
  return static_cast<Symbol>(s);
}

bool is_local_square(const Rat& a, const Place& v) {
  if (a == 0) throw std::domain_error("is_local_square: zero");
  if (v.is_real()) return sgn(a) > 0;
  const Int& p = v.prime();
  if (valuation(a, p) % 2 != 0) return false;
  const Rat u = unit_part(a, p);
  if (p == 2) return residue(u, Int(8)) == 1;
  return legendre(residue(u, p), p) == 1;
}

// ---------------------------------------------------------------- square classes

SquareClass::SquareClass(const Rat& a) {
  if (a == 0) throw std::domain_error("square class of zero");
  Int rep = 1;
  for (const Int& part : {Int(abs(a.get_num())), a.get_den()})
    if (part > 1)
      for (auto& [p, e] : factor_integer(part))
        if (e % 2) rep *= p;
  rep_ = sgn(a) < 0 ? Int(-rep) : rep;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
  // For squarefree a, b: ab / gcd(a,b)^2 is the squarefree part of ab.
  Int g;
  mpz_gcd(g.get_mpz_t(), rep_.get_mpz_t(), o.rep_.get_mpz_t());
  SquareClass out;
  out.rep_ = rep_ * o.rep_ / (g * g);
  return out;
}

SquareClass SquareClass::from_rep(const Int& squarefree_rep) {
  SquareClass c(Rat{squarefree_rep});
  if (c.rep_ != squarefree_rep) throw InputError("not squarefree: " + squarefree_rep.get_str());
  return c;
}

}  // namespace isoq
