#include "isoq/factor.hpp"

#include "isoq/polymod.hpp"

#include <algorithm>
#include <stdexcept>

namespace isoq {

namespace {

using modp::ZPoly;

// Coefficient bound for any factor of a monic integer polynomial.
Int mignotte_bound(const Poly& f) {
  Rat norm2 = 0;
  for (auto& c : f.coeffs()) norm2 += c * c;
  Int root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_num_mpz_t());
  Int bound = root + 1;
  bound <<= static_cast<unsigned>(f.degree());
  return bound;
}

bool integral_divide(const Poly& a, const Poly& b, Poly& quotient) {
  if (b.coeff(0) != 0 && a.coeff(0) != 0) {
    Rat ratio = a.coeff(0) / b.coeff(0);
    if (ratio.get_den() != 1) return false;
  }
  auto q = exact_divide(a, b);
  if (!q) return false;
  for (auto& c : q->coeffs())
    if (c.get_den() != 1) return false;
  quotient = *q;
  return true;
}

// Subsets of size k of {0..n-1} in lexicographic order, advanced in place.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Poly> zassenhaus(const Poly& f) {
  const int n = f.degree();
  if (n <= 1) return {f};

  // Pick the good prime with the fewest modular factors among the first few.
  Int best_p = 0;
  std::vector<ZPoly> best;
  int good = 0;
  for (Int p = 3; good < 6; p = next_prime(p)) {
    ZPoly fp = modp::reduce(f, p);
    if (modp::degree(fp) != n || !modp::is_squarefree(fp, p)) continue;
    ++good;
    auto facs = modp::factor_squarefree(fp, p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) return {f};
  }

  const Int bound = 2 * mignotte_bound(f) + 1;
  int k = 1;
  Int pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }
  auto lifted = modp::hensel_lift(modp::reduce(f, pk), best, best_p, k);

  std::vector<Poly> found;
  Poly rest = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool progress = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    do {
      ZPoly prod{Int(1)};
      for (auto i : idx) prod = modp::mul(prod, lifted[i], pk);
      Poly cand = modp::lift_symmetric(prod, pk);
      Poly quotient;
      if (integral_divide(rest, cand, quotient)) {
        found.push_back(cand);
        rest = quotient;
        for (std::size_t j = idx.size(); j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
        progress = true;
        break;
      }
    } while (next_combination(idx, lifted.size()));
    if (!progress) ++s;
  }
  if (rest.degree() > 0) found.push_back(rest);
  return found;
}

// Monic squarefree rational polynomial -> monic irreducible factors.
std::vector<Poly> factor_squarefree_rational(const Poly& p) {
  const int n = p.degree();
  if (n <= 1) return {p};
  Int den = 1;
  for (auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  // F(Y) = D^n p(Y / D) is a monic integer polynomial.
  std::vector<Rat> fc(static_cast<std::size_t>(n) + 1);
  Int dpow = 1;
  for (int i = n; i >= 0; --i) {
    fc[i] = p.coeff(i) * dpow;
    dpow *= den;
  }
  std::vector<Poly> out;
  for (auto& g : zassenhaus(Poly(fc))) {
    // g(X) = D^{-deg} G(D X).
    const int d = g.degree();
    std::vector<Rat> gc(static_cast<std::size_t>(d) + 1);
    Rat scale = 1;
    for (int i = 0; i <= d; ++i) {
      gc[i] = g.coeff(i) * scale;
      scale *= den;
    }
    out.push_back(Poly(gc).monic());
  }
  return out;
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_rational(const Poly& f_in) {
  if (f_in.is_zero()) throw std::domain_error("factor_rational(0)");
  std::vector<std::pair<Poly, int>> out;
  Poly f = f_in.monic();
  int xpow = 0;
  while (f.degree() > 0 && f.coeff(0) == 0) {
    f = f / Poly::x();
    ++xpow;
  }
  if (xpow) out.emplace_back(Poly::x(), xpow);
  for (auto& [part, e] : squarefree_decomposition(f))
    for (auto& g : factor_squarefree_rational(part)) out.emplace_back(g, e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto facs = factor_rational(f);
  return facs.size() == 1 && facs[0].second == 1;
}

}  // namespace isoq
