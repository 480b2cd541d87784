#include "isoq/poly.hpp"

#include "isoq/factor.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace isoq {

Poly::Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

Poly::Poly(std::initializer_list<long> ascending) {
  for (long x : ascending) c_.emplace_back(x);
  trim();
}

Poly Poly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1, Rat(0));
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / leading();
  return inv * *this;
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::shift(const Rat& c) const {
  // Horner in the shifted variable.
  Poly acc;
  const Poly lin(std::vector<Rat>{c, Rat(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

Poly Poly::reversed() const {
  std::vector<Rat> r(c_.rbegin(), c_.rend());
  return Poly(std::move(r));
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Poly Poly::primitive_integer() const {
  if (is_zero()) return *this;
  Int den = 1, num = 0;
  for (auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Rat> v;
  for (auto& x : c_) {
    Int n = x.get_num() * (den / x.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
    v.emplace_back(n);
  }
  if (sgn(c_.back()) < 0) num = -num;
  for (auto& x : v) x /= num;
  return Poly(std::move(v));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& a = c_[i];
    if (a == 0) continue;
    Rat mag = abs(a);
    os << (sgn(a) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) os << (mag != 1 ? "*X" : "X");
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(const Rat& s, const Poly& a) {
  std::vector<Rat> v = a.c_;
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rat> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - db) + 1, Rat(0));
  const Rat inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rat c = r[i] * inv;
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& a_in, const Poly& b_in) {
  Poly a = a_in, b = b_in;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_integer();
  }
  return a.monic();
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Rat resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rat r;
    mpq_class base = b.leading();
    r = 1;
    for (int i = 0; i < m; ++i) r *= base;
    return r;
  }
  Poly rem = a % b;
  if (rem.is_zero()) return 0;
  Rat factor = 1;
  for (int i = 0; i < m - rem.degree(); ++i) factor *= b.leading();
  if ((m % 2) && (n % 2)) factor = -factor;
  return factor * resultant(b, rem);
}

Rat discriminant(const Poly& f) {
  const int n = f.degree();
  Rat r = resultant(f, f.derivative()) / f.leading();
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f_in) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = f_in.monic();
  if (f.degree() < 1) return out;
  // Yun's algorithm.
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    Poly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

// ---------------------------------------------------------------- reciprocal toolkit

Poly star(const Poly& f) {
  if (f.is_zero() || f.coeff(0) == 0) throw InputError("star undefined: f(0) = 0");
  return (1 / f.coeff(0)) * f.reversed();
}

Symmetry epsilon_symmetry(const Poly& f) {
  if (f.coeff(0) == 0) return Symmetry::none;
  const Poly s = star(f);
  if (s != f) return Symmetry::none;
  return f.coeff(0) == 1 ? Symmetry::symmetric : Symmetry::antisymmetric;
}

PolyType classify_irreducible(const Poly& f) {
  if (!f.is_monic() || !is_irreducible(f)) throw InputError("not monic irreducible: " + f.to_string());
  if (f == Poly{-1, 1} || f == Poly{1, 1}) return PolyType::type0;
  if (f.coeff(0) != 0 && star(f) == f && f.degree() % 2 == 0) return PolyType::type1;
  if (f.coeff(0) == 0) throw InputError("X divides the polynomial: star undefined");
  return PolyType::type2_member;
}

Poly TypeDecomposition::product() const {
  Poly p = Poly::constant(1);
  for (auto& [f, e] : type0) p *= f.pow(e);
  for (auto& [f, e] : type1) p *= f.pow(e);
  for (auto& [gg, e] : type2) p *= (gg.first * gg.second).pow(e);
  return p;
}

TypeDecomposition type_decomposition(const Poly& f) {
  if (!f.is_monic() || epsilon_symmetry(f) == Symmetry::none)
    throw InputError("type_decomposition needs a monic epsilon-symmetric polynomial");
  TypeDecomposition out;
  std::map<Poly, int> rest;
  for (auto& [g, e] : factor_rational(f)) {
    switch (classify_irreducible(g)) {
      case PolyType::type0: out.type0.emplace_back(g, e); break;
      case PolyType::type1: out.type1.emplace_back(g, e); break;
      case PolyType::type2_member: rest[g] = e; break;
    }
  }
  while (!rest.empty()) {
    auto [g, e] = *rest.begin();
    rest.erase(rest.begin());
    Poly h = star(g);
    auto it = rest.find(h);
    if (it == rest.end() || it->second != e) throw std::logic_error("unpaired type-2 factor");
    rest.erase(it);
    out.type2.push_back({{g, h}, e});
  }
  out.hyperbolic = std::all_of(out.type0.begin(), out.type0.end(), [](auto& x) { return x.second % 2 == 0; }) &&
                   std::all_of(out.type1.begin(), out.type1.end(), [](auto& x) { return x.second % 2 == 0; });
  return out;
}

TraceData trace_polynomial(const Poly& f) {
  if (!f.is_monic() || f.degree() % 2 != 0 || epsilon_symmetry(f) != Symmetry::symmetric)
    throw InputError("trace_polynomial needs a monic symmetric polynomial of even degree");
  const int d = f.degree() / 2;
  Poly h = f;
  std::vector<Rat> g(static_cast<std::size_t>(d) + 1, Rat(0));
  const Poly x2p1{1, 0, 1};
  for (int k = d; k >= 0; --k) {
    Rat c = h.coeff(d + k);
    g[k] = c;
    if (c != 0) h = h - c * (Poly::monomial(Rat(1), d - k) * x2p1.pow(static_cast<unsigned>(k)));
  }
  if (!h.is_zero()) throw std::logic_error("trace polynomial residue nonzero");
  TraceData out{f, Poly(std::move(g)), {}};
  out.theta = Poly{-4, 0, 1} % out.g;
  return out;
}

namespace {

std::vector<Poly> sturm_chain(const Poly& f) {
  std::vector<Poly> chain{f.primitive_integer(), f.derivative().primitive_integer()};
  while (chain.back().degree() > 0) {
    Poly r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern.
    Poly pr = r.primitive_integer();
    if (sgn(pr.leading()) != sgn(r.leading())) pr = -pr;
    chain.push_back(-pr);
  }
  return chain;
}

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at(const std::vector<Poly>& chain, const Rat& x) {
  std::vector<int> s;
  for (auto& p : chain) s.push_back(sgn(p.eval(x)));
  return variations(s);
}

int variations_at_infinity(const std::vector<Poly>& chain, bool positive) {
  std::vector<int> s;
  for (auto& p : chain) {
    int sg = sgn(p.leading());
    if (!positive && p.degree() % 2) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

}  // namespace

int sturm_count(const Poly& f, const Rat& lo, const Rat& hi) {
  if (f.degree() < 1) return 0;
  if (f.eval(lo) == 0 || f.eval(hi) == 0) throw std::domain_error("sturm_count: endpoint is a root");
  auto chain = sturm_chain(f);
  return variations_at(chain, lo) - variations_at(chain, hi);
}

int sturm_count_real(const Poly& f) {
  if (f.degree() < 1) return 0;
  auto chain = sturm_chain(f);
  return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

CircleCount unit_circle_root_count(const Poly& f_in) {
  if (f_in.is_zero() || epsilon_symmetry(f_in.monic()) == Symmetry::none)
    throw InputError("unit_circle_root_count needs an epsilon-symmetric polynomial");
  CircleCount out;
  Poly f = f_in.monic();
  for (const Poly& lin : {Poly{-1, 1}, Poly{1, 1}}) {
    while (f.degree() > 0) {
      auto q = exact_divide(f, lin);
      if (!q) break;
      f = *q;
      ++out.on;
    }
  }
  if (f.degree() == 0) return out;
  const TraceData td = trace_polynomial(f);
  int inside = 0;
  for (auto& [part, mult] : squarefree_decomposition(td.g)) inside += mult * sturm_count(part, Rat(-2), Rat(2));
  out.on += 2 * inside;
  out.off = f.degree() - 2 * inside;
  return out;
}

}  // namespace isoq
