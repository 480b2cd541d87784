#include "isoq/qspace.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace isoq {

void require_gram(const Matrix& g) {
  if (!g.is_square()) throw InputError("Gram matrix must be square");
  if (!g.is_symmetric()) throw InputError("Gram matrix must be symmetric");
  if (g.det() == 0) throw InputError("Gram matrix is degenerate");
}

std::vector<Rat> diagonalize(const Matrix& g_in, Matrix* basis) {
  require_gram(g_in);
  const int n = g_in.rows();
  Matrix a = g_in;
  Matrix b = Matrix::identity(n);
  // Congruence by elementary row/column operations applied to both a and b.
  auto swap_rc = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (int k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
    for (int k = 0; k < n; ++k) std::swap(b(i, k), b(j, k));
  };
  auto add_rc = [&](int dst, int src, const Rat& c) {
    for (int k = 0; k < n; ++k) a(dst, k) += c * a(src, k);
    for (int k = 0; k < n; ++k) a(k, dst) += c * a(k, src);
    for (int k = 0; k < n; ++k) b(dst, k) += c * b(src, k);
  };
  // Height of a nonzero rational; pivots of small height keep the later
  // entries, and so the integers to factor, small.
  auto height = [](const Rat& x) {
    return std::max(mpz_sizeinbase(x.get_num_mpz_t(), 2), mpz_sizeinbase(x.get_den_mpz_t(), 2));
  };
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, i) != 0 && (piv < 0 || height(a(i, i)) < height(a(piv, piv)))) piv = i;
    if (piv > k) {
      swap_rc(k, piv);
    } else if (piv < 0) {
      // All remaining diagonal entries vanish: e_k + e_j has value 2 a(k,j).
      int j = k + 1;
      while (j < n && a(k, j) == 0) ++j;
      if (j == n) throw InputError("Gram matrix is degenerate");
      add_rc(k, j, Rat(1));
    }
    for (int i = k + 1; i < n; ++i)
      if (a(i, k) != 0) add_rc(i, k, -a(i, k) / a(k, k));
  }
  std::vector<Rat> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = a(i, i);
  if (basis) *basis = b;
  return d;
}

Int local_square_class(const Rat& a, const Place& v) {
  if (a == 0) throw InfiniteValuation();
  if (v.is_real()) return a > 0 ? Int(1) : Int(-1);
  const Int& p = v.prime();
  const int val = valuation(a, p);
  const Int unit = residue(unit_part(a, p), p == 2 ? Int(8) : p);
  Int rep;
  if (p == 2) {
    rep = unit;
  } else if (legendre(unit, p) == 1) {
    rep = 1;
  } else {
    rep = 2;
    while (legendre(rep, p) != -1) ++rep;
  }
  return (val % 2 != 0) ? rep * p : rep;
}

GlobalInvariants GlobalInvariants::of_diagonal(const std::vector<Rat>& entries) {
  GlobalInvariants inv;
  inv.dim = static_cast<int>(entries.size());
  std::vector<Int> parts;
  int sign = 1;
  for (auto& a : entries) {
    if (a == 0) throw InputError("zero diagonal entry");
    (a > 0 ? inv.signature.pos : inv.signature.neg)++;
    if (a < 0) sign = -sign;
    parts.push_back(a.get_num());
    parts.push_back(a.get_den());
  }
  // Factor each coprime piece once; the entries share most of their primes.
  std::set<Place> places{Place::real(), Place::finite(2)};
  SquareClass det{Rat(sign)};
  for (auto& piece : coprime_base(parts))
    for (auto& [p, e] : factor_integer(piece)) {
      places.insert(Place::finite(p));
      int total = 0;
      for (auto& a : entries) total += valuation(a, p);
      if (total % 2) det = det * SquareClass(Rat(p));
    }
  inv.det = det;
  for (auto& v : places) {
    Symbol w = Symbol::plus;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) w *= hilbert(entries[i], entries[j], v);
    if (is_minus(w)) inv.hasse_support.insert(v);
  }
  return inv;
}

GlobalInvariants GlobalInvariants::hyperbolic(int planes) {
  GlobalInvariants inv;
  inv.dim = 2 * planes;
  inv.det = SquareClass(Rat(planes % 2 ? -1 : 1));
  inv.signature = {planes, planes};
  // w(H^m) = (-1,-1)^{m(m-1)/2}.
  if ((planes * (planes - 1) / 2) % 2 == 1) inv.hasse_support = {Place::real(), Place::finite(2)};
  return inv;
}

SquareClass GlobalInvariants::disc() const {
  const bool flip = (dim * (dim - 1) / 2) % 2 == 1;
  return SquareClass(Rat(flip ? -det.rep() : det.rep()));
}

LocalInvariants GlobalInvariants::local(const Place& v) const {
  LocalInvariants li;
  li.place = v;
  li.dim = dim;
  li.det = local_square_class(Rat(det.rep()), v);
  li.hasse = hasse(v);
  if (v.is_real()) li.signature = signature;
  return li;
}

std::set<Place> GlobalInvariants::support() const {
  std::set<Place> s{Place::real(), Place::finite(2)};
  for (auto& p : prime_support(Rat(det.rep()))) s.insert(Place::finite(p));
  s.insert(hasse_support.begin(), hasse_support.end());
  return s;
}

bool GlobalInvariants::realizable() const {
  if (dim < 0 || signature.pos < 0 || signature.neg < 0 || signature.pos + signature.neg != dim) return false;
  if (hasse_support.size() % 2 != 0) return false;
  if ((det.rep() < 0) != (signature.neg % 2 == 1)) return false;
  const int s = signature.neg;
  if (((s * (s - 1) / 2) % 2 == 1) != hasse_support.count(Place::real())) return false;
  if (dim == 0) return det.is_square() && hasse_support.empty();
  if (dim == 1) return hasse_support.empty();
  if (dim == 2) {
    // A binary form with -det a local square is hyperbolic there.
    for (auto& v : hasse_support)
      if (is_local_square(Rat(-det.rep()), v)) return false;
  }
  return true;
}

namespace {

std::set<Place> joint_places(const GlobalInvariants& a, const GlobalInvariants& b) {
  std::set<Place> s = a.support();
  auto t = b.support();
  s.insert(t.begin(), t.end());
  return s;
}

}  // namespace

GlobalInvariants operator+(const GlobalInvariants& a, const GlobalInvariants& b) {
  GlobalInvariants c;
  c.dim = a.dim + b.dim;
  c.det = a.det * b.det;
  c.signature = {a.signature.pos + b.signature.pos, a.signature.neg + b.signature.neg};
  // w(a + b) = w(a) w(b) (det a, det b).
  for (auto& v : joint_places(a, b)) {
    Symbol w = a.hasse(v) * b.hasse(v) * hilbert(Rat(a.det.rep()), Rat(b.det.rep()), v);
    if (is_minus(w)) c.hasse_support.insert(v);
  }
  return c;
}

GlobalInvariants GlobalInvariants::cancel(const GlobalInvariants& part) const {
  GlobalInvariants c;
  c.dim = dim - part.dim;
  c.signature = {signature.pos - part.signature.pos, signature.neg - part.signature.neg};
  if (c.dim < 0 || c.signature.pos < 0 || c.signature.neg < 0)
    throw std::domain_error("Witt cancellation beyond the signature");
  c.det = det * part.det;
  // w(self) = w(part) w(c) (det part, det c).
  for (auto& v : joint_places(*this, part)) {
    Symbol w = hasse(v) * part.hasse(v) * hilbert(Rat(part.det.rep()), Rat(c.det.rep()), v);
    if (is_minus(w)) c.hasse_support.insert(v);
  }
  return c;
}

GlobalInvariants invariants(const Matrix& g) { return GlobalInvariants::of_diagonal(diagonalize(g)); }

int local_anisotropic_dim(const LocalInvariants& inv) {
  if (inv.place.is_real()) {
    if (inv.signature.pos + inv.signature.neg != inv.dim) throw InputError("inconsistent local invariants");
    return std::abs(inv.signature.pos - inv.signature.neg);
  }
  const Place& v = inv.place;
  int n = inv.dim;
  Rat d(inv.det);
  Symbol c = inv.hasse;
  // Each isotropic step splits H off: q = H + q', det q' = -det q,
  // w(q') = w(q) (-1, -det q).
  while (true) {
    switch (n) {
      case 0:
        if (!is_local_square(d, v) || is_minus(c)) throw InputError("inconsistent local invariants");
        return 0;
      case 1:
        if (is_minus(c)) throw InputError("inconsistent local invariants");
        return 1;
      case 2:
        if (is_local_square(-d, v)) {
          if (is_minus(c)) throw InputError("inconsistent local invariants");
          return 0;
        }
        return 2;
      case 3:
        return hilbert(Rat(-1), -d, v) == c ? 1 : 3;
      case 4:
        if (is_local_square(d, v) && c != hilbert(Rat(-1), Rat(-1), v)) return 4;
        break;
      default:
        break;
    }
    c *= hilbert(Rat(-1), -d, v);
    d = -d;
    n -= 2;
  }
}

int global_witt_index(const GlobalInvariants& inv) {
  int best = inv.dim / 2;
  for (auto& v : inv.support()) best = std::min(best, local_witt_index(inv.local(v)));
  return best;
}

bool equivalent(const GlobalInvariants& a, const GlobalInvariants& b, const std::optional<Place>& place) {
  if (place) return a.local(*place) == b.local(*place);
  return a == b;
}

bool equivalent(const Matrix& a, const Matrix& b, const std::optional<Place>& place) {
  return equivalent(invariants(a), invariants(b), place);
}

bool represents(const GlobalInvariants& inv, const Rat& d) {
  if (d == 0) throw InputError("represents: d must be nonzero (use global_witt_index)");
  return global_witt_index(inv + GlobalInvariants::of_diagonal({-d})) >= 1;
}

}  // namespace isoq
