#include "isoq/polymod.hpp"

#include <algorithm>
#include <stdexcept>

namespace isoq::modp {

namespace {

Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int inverse(const Int& a, const Int& m) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("non-invertible element modulo " + m.get_str());
  return inv;
}

ZPoly pth_root(const ZPoly& f, const Int& p) {
  const unsigned long pu = p.get_ui();
  ZPoly r;
  for (std::size_t i = 0; i < f.size(); i += pu) r.push_back(f[i]);
  trim(r);
  return r;
}

std::vector<std::pair<ZPoly, int>> squarefree_parts(const ZPoly& f, const Int& p) {
  std::vector<std::pair<ZPoly, int>> out;
  if (degree(f) < 1) return out;
  ZPoly fp = derivative(f, p);
  if (fp.empty()) {
    for (auto& [h, e] : squarefree_parts(pth_root(f, p), p))
      out.emplace_back(h, e * static_cast<int>(p.get_ui()));
    return out;
  }
  ZPoly c = gcd(f, fp, p);
  ZPoly w = divmod(f, c, p).first;
  int i = 1;
  while (degree(w) > 0) {
    ZPoly y = gcd(w, c, p);
    ZPoly z = divmod(w, y, p).first;
    if (degree(z) > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = divmod(c, y, p).first;
  }
  if (degree(c) > 0)
    for (auto& [h, e] : squarefree_parts(pth_root(c, p), p))
      out.emplace_back(h, e * static_cast<int>(p.get_ui()));
  return out;
}

std::vector<std::pair<ZPoly, int>> distinct_degree(ZPoly f, const Int& p) {
  std::vector<std::pair<ZPoly, int>> out;
  const ZPoly x{Int(0), Int(1)};
  ZPoly h = divmod(x, f, p).second;
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(h, p, f, p);
    ZPoly g = gcd(sub(h, x, p), f, p);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g, p).first;
      h = divmod(h, f, p).second;
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

void equal_degree(const ZPoly& g, int d, const Int& p, std::mt19937_64& rng, std::vector<ZPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  const int n = degree(g);
  for (;;) {
    ZPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = Int(static_cast<unsigned long>(rng())) % p;
    trim(a);
    if (degree(a) < 1) continue;
    ZPoly b;
    if (p == 2) {
      ZPoly term = a, acc = a;
      for (int i = 1; i < d; ++i) {
        term = divmod(mul(term, term, p), g, p).second;
        acc = add(acc, term, p);
      }
      b = acc;
    } else {
      Int e;
      mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = sub(powmod(a, e, g, p), ZPoly{Int(1)}, p);
    }
    ZPoly h = gcd(b, g, p);
    if (degree(h) > 0 && degree(h) < n) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

struct Lifted {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step: inputs valid modulo m, outputs modulo m^2.
Lifted hensel_step(const ZPoly& f, const Lifted& in, const Int& m) {
  const Int m2 = m * m;
  ZPoly e = sub(reduce(f, m2), mul(in.g, in.h, m2), m2);
  auto [q, r] = divmod(mul(in.s, e, m2), in.h, m2);
  Lifted out;
  out.g = add(add(in.g, mul(in.t, e, m2), m2), mul(q, in.g, m2), m2);
  out.h = add(in.h, r, m2);
  ZPoly b = sub(add(mul(in.s, out.g, m2), mul(in.t, out.h, m2), m2), ZPoly{Int(1)}, m2);
  auto [c, dd] = divmod(mul(in.s, b, m2), out.h, m2);
  out.s = sub(in.s, dd, m2);
  out.t = sub(sub(in.t, mul(in.t, b, m2), m2), mul(c, out.g, m2), m2);
  return out;
}

std::vector<ZPoly> lift_rec(const ZPoly& f, const std::vector<ZPoly>& factors, const Int& p, int k) {
  if (factors.size() == 1) {
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return {reduce(f, pk)};
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ZPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ZPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  ZPoly g{Int(1)}, h{Int(1)};
  for (auto& x : left) g = mul(g, x, p);
  for (auto& x : right) h = mul(h, x, p);
  ZPoly one, s, t;
  extended_gcd(g, h, p, one, s, t);
  if (one != ZPoly{Int(1)}) throw std::domain_error("hensel_lift: factors not coprime mod p");
  Lifted cur{g, h, s, t};
  Int m = p;
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  while (m < pk) {
    cur = hensel_step(f, cur, m);
    m *= m;
  }
  ZPoly gk = reduce(cur.g, pk), hk = reduce(cur.h, pk);
  auto a = lift_rec(gk, left, p, k);
  auto b = lift_rec(hk, right, p, k);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly reduce(const Poly& f, const Int& m) {
  ZPoly r;
  for (auto& c : f.coeffs()) r.push_back(residue(c, m));
  trim(r);
  return r;
}

ZPoly reduce(const ZPoly& f, const Int& m) {
  ZPoly r;
  for (auto& c : f) r.push_back(mod(c, m));
  trim(r);
  return r;
}

Poly lift_symmetric(const ZPoly& f, const Int& m) {
  std::vector<Rat> v;
  const Int half = m / 2;
  for (auto& c : f) {
    Int x = mod(c, m);
    if (x > half) x -= m;
    v.emplace_back(x);
  }
  return Poly(std::move(v));
}

Poly lift(const ZPoly& f) {
  std::vector<Rat> v;
  for (auto& c : f) v.emplace_back(c);
  return Poly(std::move(v));
}

ZPoly add(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  for (auto& c : r) c = mod(c, m);
  trim(r);
  return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  for (auto& c : r) c = mod(c, m);
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = mod(c, m);
  trim(r);
  return r;
}

ZPoly scale(const ZPoly& a, const Int& s, const Int& m) {
  ZPoly r = a;
  for (auto& c : r) c = mod(c * s, m);
  trim(r);
  return r;
}

std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (b.empty()) throw std::domain_error("division by zero polynomial");
  ZPoly r = reduce(a, m);
  const int db = degree(b);
  if (degree(r) < db) return {{}, r};
  const Int inv = inverse(b.back(), m);
  ZPoly q(static_cast<std::size_t>(degree(r) - db) + 1, Int(0));
  for (int i = degree(r); i >= db; --i) {
    Int c = mod(r[i] * inv, m);
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = mod(r[i - db + j] - c * b[j], m);
  }
  trim(q);
  trim(r);
  return {q, r};
}

ZPoly monic(const ZPoly& a, const Int& m) {
  if (a.empty()) return a;
  return scale(a, inverse(a.back(), m), m);
}

ZPoly gcd(const ZPoly& a_in, const ZPoly& b_in, const Int& p) {
  ZPoly a = reduce(a_in, p), b = reduce(b_in, p);
  while (!b.empty()) {
    ZPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

void extended_gcd(const ZPoly& a, const ZPoly& b, const Int& p, ZPoly& g, ZPoly& s, ZPoly& t) {
  ZPoly r0 = reduce(a, p), r1 = reduce(b, p);
  ZPoly s0{Int(1)}, s1{}, t0{}, t1{Int(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    ZPoly s2 = sub(s0, mul(q, s1, p), p);
    ZPoly t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  const Int inv = inverse(r0.back(), p);
  g = scale(r0, inv, p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
}

ZPoly derivative(const ZPoly& a, const Int& m) {
  ZPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mod(a[i] * static_cast<unsigned long>(i), m));
  trim(r);
  return r;
}

ZPoly powmod(const ZPoly& base, const Int& e, const ZPoly& modulus, const Int& m) {
  ZPoly result = divmod(ZPoly{Int(1)}, modulus, m).second;
  ZPoly b = divmod(base, modulus, m).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(mul(result, result, m), modulus, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(mul(result, b, m), modulus, m).second;
  }
  return result;
}

Int eval(const ZPoly& a, const Int& x, const Int& m) {
  Int acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = mod(acc * x + *it, m);
  return acc;
}

ZPoly star(const ZPoly& f, const Int& m) {
  if (f.empty() || mod(f[0], m) == 0) throw std::domain_error("star undefined mod m");
  ZPoly r(f.rbegin(), f.rend());
  return scale(r, inverse(f[0], m), m);
}

bool is_squarefree(const ZPoly& f, const Int& p) {
  if (degree(f) < 1) return true;
  return degree(gcd(f, derivative(f, p), p)) == 0 && !derivative(f, p).empty();
}

bool is_irreducible(const ZPoly& f_in, const Int& p) {
  ZPoly f = monic(reduce(f_in, p), p);
  if (degree(f) < 1) return false;
  if (degree(f) == 1) return true;
  if (!is_squarefree(f, p)) return false;
  auto dd = distinct_degree(f, p);
  return dd.size() == 1 && dd[0].second == degree(f);
}

std::vector<ZPoly> factor_squarefree(const ZPoly& f_in, const Int& p) {
  ZPoly f = monic(reduce(f_in, p), p);
  std::vector<ZPoly> out;
  if (degree(f) < 1) return out;
  std::mt19937_64 rng(0xC0FFEE);
  for (auto& [g, d] : distinct_degree(f, p)) equal_degree(g, d, p, rng, out);
  std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::pair<ZPoly, int>> factor(const ZPoly& f_in, const Int& p) {
  ZPoly f = monic(reduce(f_in, p), p);
  std::vector<std::pair<ZPoly, int>> out;
  for (auto& [part, e] : squarefree_parts(f, p))
    for (auto& g : factor_squarefree(part, p)) out.emplace_back(g, e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ZPoly>& factors, const Int& p, int k) {
  if (factors.empty()) throw std::domain_error("hensel_lift: no factors");
  return lift_rec(f, factors, p, k);
}

std::vector<ZPoly> monic_polys(int deg, const Int& p) {
  const unsigned long pu = p.get_ui();
  std::vector<ZPoly> out;
  unsigned long total = 1;
  for (int i = 0; i < deg; ++i) total *= pu;
  for (unsigned long idx = 0; idx < total; ++idx) {
    ZPoly f(static_cast<std::size_t>(deg) + 1, Int(0));
    unsigned long x = idx;
    for (int i = 0; i < deg; ++i) {
      f[i] = Int(x % pu);
      x /= pu;
    }
    f[deg] = 1;
    out.push_back(f);
  }
  return out;
}

}  // namespace isoq::modp
