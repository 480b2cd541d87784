#include "isoq/padic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace isoq {

using modp::ZPoly;

bool LocalFactorization::has_symmetric() const {
  return std::any_of(factors.begin(), factors.end(), [](const LocalFactor& f) {
    return f.tag == FactorTag::symmetric && f.irreducible && !f.unresolved;
  });
}

std::optional<bool> LocalFactorization::hyperbolic() const {
  if (has_symmetric()) return false;
  if (std::any_of(factors.begin(), factors.end(), [](const LocalFactor& f) { return f.unresolved; }))
    return std::nullopt;
  return true;
}

namespace {

constexpr int kInfiniteValuation = 1 << 28;

int val_or_inf(const Rat& c, const Int& p) { return c == 0 ? kInfiniteValuation : valuation(c, p); }

struct Vertex {
  int i, v;
};

// Lower convex hull of the points (i, v_i) for i in [lo, hi].
std::vector<Vertex> lower_hull(const std::vector<int>& v, int lo, int hi) {
  std::vector<Vertex> hull;
  for (int i = lo; i <= hi; ++i) {
    if (v[i] >= kInfiniteValuation) continue;
    Vertex pt{i, v[i]};
    while (hull.size() >= 2) {
      const Vertex& a = hull[hull.size() - 2];
      const Vertex& b = hull.back();
      // Drop b when it lies on or above segment a-pt.
      long cross = static_cast<long>(b.i - a.i) * (pt.v - a.v) - static_cast<long>(b.v - a.v) * (pt.i - a.i);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  return hull;
}

Int ipow(const Int& p, int k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

void tag_by_residue(std::vector<LocalFactor>& out, const std::vector<ZPoly>& residues, std::size_t base,
                    const Int& p) {
  for (std::size_t a = 0; a < residues.size(); ++a) {
    LocalFactor& fac = out[base + a];
    const ZPoly& phi = residues[a];
    if (modp::degree(phi) == 1 && (phi[0] == 1 || phi[0] == p - 1) && phi[1] == 1) {
      fac.tag = FactorTag::type0;
      continue;
    }
    ZPoly s = modp::star(phi, p);
    if (s == phi) {
      fac.tag = FactorTag::symmetric;
      continue;
    }
    auto it = std::find(residues.begin(), residues.end(), s);
    if (it == residues.end()) throw std::logic_error("star partner missing modulo p");
    fac.tag = FactorTag::paired;
    fac.partner = static_cast<int>(base + static_cast<std::size_t>(it - residues.begin()));
  }
}

// Newton polygon analysis of a block congruent to (X - c)^e modulo p, c = +-1.
void analyse_linear_block(const Poly& f, const Int& p, int c, int e, std::vector<LocalFactor>& out) {
  const Poly shifted = f.shift(Rat(c));
  std::vector<int> v;
  for (int i = 0; i <= shifted.degree(); ++i) v.push_back(val_or_inf(shifted.coeff(i), p));
  const auto hull = lower_hull(v, 0, e);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const Vertex a = hull[s], b = hull[s + 1];
    const int di = b.i - a.i, dv = a.v - b.v;
    const int g = std::gcd(di, dv);
    const int ep = di / g, h = dv / g;
    const int rdeg = di / ep;
    ZPoly residual(static_cast<std::size_t>(rdeg) + 1, Int(0));
    for (int j = 0; j <= rdeg; ++j) {
      const int idx = a.i + j * ep;
      const int target = a.v - j * h;
      if (v[idx] == target) residual[j] = residue(shifted.coeff(idx) / Rat(ipow(p, target)), p);
    }
    modp::trim(residual);
    auto facs = modp::factor(residual, p);
    const bool separable = std::all_of(facs.begin(), facs.end(), [](auto& x) { return x.second == 1; });
    if (!separable) {
      LocalFactor u;
      u.degree = di;
      u.irreducible = false;
      u.unresolved = true;
      out.push_back(u);
      continue;
    }
    const std::size_t base = out.size();
    std::vector<ZPoly> psis;
    for (auto& [psi, mult] : facs) psis.push_back(psi);
    for (auto& psi : psis) {
      LocalFactor lf;
      lf.degree = ep * modp::degree(psi);
      lf.tag = FactorTag::symmetric;
      out.push_back(lf);
    }
    // Star acts on residual roots by z -> (-1)^{e'} z.
    if (ep % 2 == 0 || p == 2) continue;
    for (std::size_t a2 = 0; a2 < psis.size(); ++a2) {
      ZPoly neg = psis[a2];
      for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = (p - neg[i]) % p;
      neg = modp::monic(neg, p);
      if (neg == psis[a2]) continue;
      auto it = std::find(psis.begin(), psis.end(), neg);
      if (it == psis.end()) throw std::logic_error("residual star partner missing");
      out[base + a2].tag = FactorTag::paired;
      out[base + a2].partner = static_cast<int>(base + static_cast<std::size_t>(it - psis.begin()));
    }
  }
}

LocalFactorization non_integral(const Poly& f, const Int& p) {
  LocalFactorization lf;
  lf.p = p;
  std::vector<int> v;
  for (int i = 0; i <= f.degree(); ++i) v.push_back(val_or_inf(f.coeff(i), p));
  const auto hull = lower_hull(v, 0, f.degree());
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    LocalFactor x;
    x.degree = hull[s + 1].i - hull[s].i;
    x.irreducible = false;
    if (hull[s].v == hull[s + 1].v) {
      x.unresolved = true;
    } else {
      x.tag = FactorTag::paired;
    }
    lf.factors.push_back(x);
  }
  // Slopes come in opposite pairs; pair the outermost segments inward.
  std::vector<int> sloped;
  for (std::size_t i = 0; i < lf.factors.size(); ++i)
    if (!lf.factors[i].unresolved) sloped.push_back(static_cast<int>(i));
  for (std::size_t a = 0, b = sloped.size(); a + 1 < b; ++a, --b) {
    lf.factors[sloped[a]].partner = sloped[b - 1];
    lf.factors[sloped[b - 1]].partner = sloped[a];
  }
  lf.status = lf.hyperbolic().has_value() ? PairingStatus::proved : PairingStatus::undecided;
  return lf;
}

bool p_integral(const Poly& f, const Int& p) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(),
                     [&](const Rat& c) { return c.get_den() % p != 0; });
}

// Second depth-one analysis through the trace polynomial g (f = X^d g(X + 1/X)).
// Each Q_p-place w of E = Q[s]/(g) contributes one symmetric factor of degree
// 2[E_w:Q_p] when s^2 - 4 is a non-square in E_w, and a paired couple otherwise.
// Only odd p and unit values of s^2 - 4 are handled.
std::optional<LocalFactorization> trace_route(const Poly& f, const Int& p) {
  if (p == 2) return std::nullopt;
  const TraceData td = trace_polynomial(f);
  const ZPoly gbar = modp::reduce(td.g, p);
  LocalFactorization lf;
  lf.p = p;
  lf.precision = 2 * valuation(discriminant(f), p) + 1;
  auto add_place = [&](int local_degree, bool split) {
    if (split) {
      LocalFactor a, b;
      a.degree = b.degree = local_degree;
      a.tag = b.tag = FactorTag::paired;
      a.partner = static_cast<int>(lf.factors.size()) + 1;
      b.partner = static_cast<int>(lf.factors.size());
      lf.factors.push_back(a);
      lf.factors.push_back(b);
    } else {
      LocalFactor a;
      a.degree = 2 * local_degree;
      lf.factors.push_back(a);
    }
  };
  auto add_unresolved = [&](int local_degree) {
    LocalFactor u;
    u.degree = 2 * local_degree;
    u.irreducible = false;
    u.unresolved = true;
    lf.factors.push_back(u);
  };
  const ZPoly theta_poly = modp::reduce(Poly{-4, 0, 1}, p);
  for (auto& [psi, e] : modp::factor(gbar, p)) {
    const int dpsi = modp::degree(psi);
    const ZPoly theta = modp::divmod(theta_poly, psi, p).second;
    if (theta.empty()) {
      add_unresolved(e * dpsi);
      continue;
    }
    if (e == 1) {
      Int q = ipow(p, dpsi);
      const bool square = modp::powmod(theta, (q - 1) / 2, psi, p) == ZPoly{Int(1)};
      add_place(dpsi, square);
      continue;
    }
    if (dpsi != 1) {
      add_unresolved(e * dpsi);
      continue;
    }
    // psi = Y - a with multiplicity e: slopes of g(Y + a) give the ramified places.
    const Int a = (p - psi[0]) % p;
    const Int theta_res = theta[0];
    const Poly shifted = td.g.shift(Rat(a));
    std::vector<int> v;
    for (int i = 0; i <= shifted.degree(); ++i) v.push_back(val_or_inf(shifted.coeff(i), p));
    const auto hull = lower_hull(v, 0, e);
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const Vertex A = hull[s], B = hull[s + 1];
      const int di = B.i - A.i, dv = A.v - B.v;
      const int g = std::gcd(di, dv);
      const int ep = di / g, h = dv / g;
      const int rdeg = di / ep;
      ZPoly residual(static_cast<std::size_t>(rdeg) + 1, Int(0));
      for (int j = 0; j <= rdeg; ++j) {
        const int idx = A.i + j * ep;
        const int target = A.v - j * h;
        if (v[idx] == target) residual[j] = residue(shifted.coeff(idx) / Rat(ipow(p, target)), p);
      }
      modp::trim(residual);
      auto facs = modp::factor(residual, p);
      for (auto& [rho, mult] : facs) {
        const int local_degree = ep * modp::degree(rho) * mult;
        if (mult != 1) {
          add_unresolved(local_degree);
          continue;
        }
        // Unit with residue theta_res in a residue field of degree deg(rho).
        const bool square = legendre(theta_res, p) == 1 || modp::degree(rho) % 2 == 0;
        add_place(ep * modp::degree(rho), square);
      }
    }
  }
  if (std::any_of(lf.factors.begin(), lf.factors.end(), [](auto& x) { return x.unresolved; }))
    lf.status = PairingStatus::undecided;
  return lf;
}

}  // namespace

LocalFactorization local_factor_pairing(const Poly& f, const Int& p) {
  if (!f.is_monic() || f.degree() < 2 || f.degree() % 2 || epsilon_symmetry(f) != Symmetry::symmetric)
    throw InputError("local_factor_pairing needs a monic symmetric polynomial of even degree");
  if (!is_prime(p)) throw InputError("local_factor_pairing: p is not prime");
  if (!p_integral(f, p)) return non_integral(f, p);

  LocalFactorization lf;
  lf.p = p;
  const ZPoly fbar = modp::reduce(f, p);
  if (modp::is_squarefree(fbar, p)) {
    const auto residues = modp::factor_squarefree(fbar, p);
    for (auto& phi : residues) {
      LocalFactor x;
      x.coeffs = phi;
      x.degree = modp::degree(phi);
      lf.factors.push_back(x);
    }
    tag_by_residue(lf.factors, residues, 0, p);
    return lf;
  }

  // Slow path: p divides the discriminant.
  lf.precision = 2 * valuation(discriminant(f), p) + 1;
  const Int pk = ipow(p, lf.precision);

  if (f.degree() == 2) {
    const Rat t = -f.coeff(1);
    if (is_local_square(t * t - 4, Place::finite(p))) {
      LocalFactor a, b;
      a.degree = b.degree = 1;
      a.tag = b.tag = FactorTag::paired;
      a.partner = 1;
      b.partner = 0;
      lf.factors = {a, b};
    } else {
      LocalFactor a;
      a.degree = 2;
      a.coeffs = modp::reduce(f, pk);
      lf.factors = {a};
    }
    return lf;
  }

  const auto blocks = modp::factor(fbar, p);
  std::vector<ZPoly> targets;
  for (auto& [phi, e] : blocks) {
    ZPoly t{Int(1)};
    for (int i = 0; i < e; ++i) t = modp::mul(t, phi, p);
    targets.push_back(t);
  }
  const auto lifted = blocks.size() > 1 ? modp::hensel_lift(modp::reduce(f, pk), targets, p, lf.precision)
                                        : std::vector<ZPoly>{modp::reduce(f, pk)};

  std::vector<ZPoly> simple_residues;
  std::vector<std::size_t> simple_index;
  std::vector<int> block_entry(blocks.size(), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& [phi, e] = blocks[b];
    const ZPoly phistar = modp::star(phi, p);
    if (e == 1) {
      LocalFactor x;
      x.coeffs = lifted[b];
      x.degree = modp::degree(phi);
      block_entry[b] = static_cast<int>(lf.factors.size());
      simple_index.push_back(lf.factors.size());
      simple_residues.push_back(phi);
      lf.factors.push_back(x);
    } else if (phistar != phi) {
      LocalFactor x;
      x.coeffs = lifted[b];
      x.degree = e * modp::degree(phi);
      x.tag = FactorTag::paired;
      x.irreducible = false;
      block_entry[b] = static_cast<int>(lf.factors.size());
      lf.factors.push_back(x);
    } else if (modp::degree(phi) == 1) {
      const int c = (phi[0] == p - 1) ? 1 : -1;  // phi = X - c mod p
      analyse_linear_block(f, p, c, e, lf.factors);
    } else {
      LocalFactor x;
      x.coeffs = lifted[b];
      x.degree = e * modp::degree(phi);
      x.irreducible = false;
      x.unresolved = true;
      lf.factors.push_back(x);
    }
  }
  // Partners for simple blocks and paired multi-blocks.
  for (std::size_t a = 0; a < simple_index.size(); ++a) {
    const ZPoly& phi = simple_residues[a];
    ZPoly s = modp::star(phi, p);
    LocalFactor& fac = lf.factors[simple_index[a]];
    if (s == phi) continue;
    auto it = std::find(simple_residues.begin(), simple_residues.end(), s);
    if (it == simple_residues.end()) throw std::logic_error("star partner missing among simple blocks");
    fac.tag = FactorTag::paired;
    fac.partner = static_cast<int>(simple_index[static_cast<std::size_t>(it - simple_residues.begin())]);
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].second == 1 || block_entry[b] < 0) continue;
    const ZPoly s = modp::star(blocks[b].first, p);
    for (std::size_t o = 0; o < blocks.size(); ++o)
      if (blocks[o].first == s) lf.factors[block_entry[b]].partner = block_entry[o];
  }
  if (std::any_of(lf.factors.begin(), lf.factors.end(), [](auto& x) { return x.unresolved; }))
    lf.status = PairingStatus::undecided;
  if (lf.status == PairingStatus::undecided && !lf.has_symmetric()) {
    if (auto alt = trace_route(f, p); alt && (alt->status != PairingStatus::undecided || alt->has_symmetric()))
      return *alt;
  }
  return lf;
}

namespace {

bool certifiably_irreducible(const ZPoly& h, const Int& p, int k) {
  const ZPoly hbar = modp::reduce(h, p);
  if (modp::is_irreducible(hbar, p)) return true;
  auto facs = modp::factor(hbar, p);
  if (facs.size() != 1 || modp::degree(facs[0].first) != 1) return false;
  // Totally ramified: h(Y + c) has a single Newton segment of denominator deg h.
  const Int c = (p - facs[0].first[0]) % p;
  const Poly shifted = modp::lift(h).shift(Rat(c));
  const int n = modp::degree(h);
  const Rat c0 = shifted.coeff(0);
  if (c0 == 0) return false;
  const int v0 = valuation(c0, p);
  if (v0 >= k || std::gcd(v0, n) != 1) return false;
  for (int i = 1; i < n; ++i) {
    const Rat ci = shifted.coeff(i);
    if (ci == 0) continue;
    // Point must lie on or above the line from (0, v0) to (n, 0).
    if (static_cast<long>(valuation(ci, p)) * n < static_cast<long>(v0) * (n - i)) return false;
  }
  return true;
}

}  // namespace

CertificateCheck verify_local_certificate(const Poly& f, LocalFactorization& cert) {
  const Int& p = cert.p;
  if (!is_prime(p)) return {false, "p is not prime"};
  if (cert.precision < 1) return {false, "precision must be positive"};
  if (cert.factors.empty()) return {false, "no factors"};
  if (!p_integral(f, p)) return {false, "polynomial is not p-integral"};
  const Int pk = ipow(p, cert.precision);
  ZPoly prod{Int(1)};
  int total = 0;
  for (auto& fac : cert.factors) {
    ZPoly h = modp::reduce(fac.coeffs, pk);
    if (h.empty() || h.back() != 1 || modp::degree(h) != fac.degree) return {false, "factor not monic of stated degree"};
    prod = modp::mul(prod, h, pk);
    total += fac.degree;
  }
  if (total != f.degree() || prod != modp::reduce(f, pk)) return {false, "product mismatch"};

  const std::size_t n = cert.factors.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rat res = resultant(modp::lift(cert.factors[i].coeffs), modp::lift(cert.factors[j].coeffs));
      if (res == 0 || res.get_num() % pk == 0) return {false, "insufficient precision"};
      if (cert.precision <= 2 * valuation(res, p)) return {false, "insufficient precision"};
    }

  for (std::size_t i = 0; i < n; ++i) {
    const LocalFactor& fac = cert.factors[i];
    const ZPoly h = modp::reduce(fac.coeffs, pk);
    if (h[0] % p == 0) return {false, "factor divisible by X"};
    const ZPoly s = modp::star(h, pk);
    switch (fac.tag) {
      case FactorTag::type0:
        if (modp::degree(h) != 1 || (h[0] != 1 && h[0] != pk - 1)) return {false, "type0 factor is not X+-1"};
        break;
      case FactorTag::symmetric:
        if (s != h) return {false, "symmetric factor is not star-fixed"};
        if (!certifiably_irreducible(h, p, cert.precision))
          return {false, "cannot certify irreducibility of symmetric factor"};
        break;
      case FactorTag::paired: {
        const int j = fac.partner;
        if (j < 0 || static_cast<std::size_t>(j) >= n || static_cast<std::size_t>(j) == i ||
            cert.factors[j].partner != static_cast<int>(i) || cert.factors[j].tag != FactorTag::paired)
          return {false, "pairing is not mutual"};
        if (s != modp::reduce(cert.factors[j].coeffs, pk)) return {false, "star of factor differs from partner"};
        break;
      }
    }
  }
  cert.status = PairingStatus::certified;
  return {true, ""};
}

}  // namespace isoq
