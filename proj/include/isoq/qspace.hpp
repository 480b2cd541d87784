#pragma once
// Quadratic spaces over Q and its completions, handled through their
// classifying invariants (dimension, determinant, Hasse classes, signature).

#include "isoq/matrix.hpp"

#include <optional>
#include <set>
#include <vector>

namespace isoq {

/// Symmetric nondegenerate Gram matrix; checked by require_gram.
using GramMatrix = Matrix;
void require_gram(const Matrix& g);

/// Diagonal entries of a congruent diagonal form. When basis is given it
/// receives B with B G B^T = diag(result).
std::vector<Rat> diagonalize(const Matrix& g, Matrix* basis = nullptr);

struct Signature {
  int pos = 0;
  int neg = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Canonical local square-class representative: {1, u, p, up} at odd p with u
/// the least non-residue, {1,3,5,7} x {1,2} at 2, and the sign at the real place.
Int local_square_class(const Rat& a, const Place& v);

struct LocalInvariants {
  Place place;
  int dim = 0;
  /// Canonical local representative of the determinant.
  Int det = 1;
  Symbol hasse = Symbol::plus;
  /// Only meaningful at the real place.
  Signature signature;
  friend bool operator==(const LocalInvariants&, const LocalInvariants&) = default;
};

/// The complete invariant system of a rational quadratic space. Orthogonal
/// sums and Witt cancellation act on it directly.
struct GlobalInvariants {
  int dim = 0;
  SquareClass det;
  std::set<Place> hasse_support;
  Signature signature;

  static GlobalInvariants of_diagonal(const std::vector<Rat>& entries);
  /// Invariants of the hyperbolic space H^planes.
  static GlobalInvariants hyperbolic(int planes);

  SquareClass disc() const;
  Symbol hasse(const Place& v) const { return hasse_support.count(v) ? Symbol::minus : Symbol::plus; }
  LocalInvariants local(const Place& v) const;
  /// {inf, 2}, the primes of det and the Hasse support: outside this set the
  /// form is unimodular with trivial Hasse class.
  std::set<Place> support() const;
  /// True when some rational form has exactly these invariants.
  bool realizable() const;

  friend GlobalInvariants operator+(const GlobalInvariants& a, const GlobalInvariants& b);
  /// The complement c with *this = part + c; throws std::domain_error when the
  /// signatures forbid it. The caller guarantees that part embeds.
  GlobalInvariants cancel(const GlobalInvariants& part) const;

  friend bool operator==(const GlobalInvariants&, const GlobalInvariants&) = default;
};

GlobalInvariants invariants(const Matrix& g);

/// Dimension of the anisotropic kernel at the place of inv (0..4 at a prime).
int local_anisotropic_dim(const LocalInvariants& inv);
inline int local_witt_index(const LocalInvariants& inv) { return (inv.dim - local_anisotropic_dim(inv)) / 2; }

int global_witt_index(const GlobalInvariants& inv);
inline int global_witt_index(const Matrix& g) { return global_witt_index(invariants(g)); }

/// Equivalence at one place, or over Q when place is empty.
bool equivalent(const GlobalInvariants& a, const GlobalInvariants& b, const std::optional<Place>& place);
bool equivalent(const Matrix& a, const Matrix& b, const std::optional<Place>& place);

bool represents(const GlobalInvariants& inv, const Rat& d);
inline bool represents(const Matrix& g, const Rat& d) { return represents(invariants(g), d); }

}  // namespace isoq
