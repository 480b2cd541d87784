#pragma once
// Univariate polynomials over Q and the reciprocal-polynomial toolkit:
// star, epsilon-symmetry, type classification, trace polynomials and
// unit-circle root counting.

#include "isoq/arith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isoq {

/// Polynomial over Q with ascending coefficients and no trailing zeros.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> ascending);
  Poly(std::initializer_list<long> ascending);

  static Poly constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }
  static Poly monomial(const Rat& c, int degree);
  static Poly x() { return monomial(Rat(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
  const Rat& leading() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Poly monic() const;

  Rat eval(const Rat& x) const;
  Poly derivative() const;
  /// f(X + c).
  Poly shift(const Rat& c) const;
  /// X^deg f(1/X) without normalization.
  Poly reversed() const;
  Poly pow(unsigned e) const;
  /// Content-free integer polynomial with positive leading coefficient.
  Poly primitive_integer() const;

  std::string to_string() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& s, const Poly& a);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  /// Canonical order: degree first, then coefficients from the constant term up.
  friend bool operator<(const Poly& a, const Poly& b);

private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// Exact quotient or nullopt when b does not divide a.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);
Rat resultant(const Poly& a, const Poly& b);
Rat discriminant(const Poly& f);

/// Squarefree decomposition of a monic polynomial: pairs (part, multiplicity).
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

// ---------------------------------------------------------------- reciprocal toolkit

/// f(0)^{-1} X^{deg f} f(1/X); requires f(0) != 0.
Poly star(const Poly& f);

enum class Symmetry { symmetric, antisymmetric, none };
Symmetry epsilon_symmetry(const Poly& f);

enum class PolyType { type0, type1, type2_member };
/// Type of a monic irreducible polynomial; irreducibility is verified.
PolyType classify_irreducible(const Poly& f);

struct TypeDecomposition {
  std::vector<std::pair<Poly, int>> type0;
  std::vector<std::pair<Poly, int>> type1;
  /// ((g, g*), exponent) with g before g* in canonical order.
  std::vector<std::pair<std::pair<Poly, Poly>, int>> type2;
  bool hyperbolic = false;

  Poly product() const;
};
TypeDecomposition type_decomposition(const Poly& f);

struct TraceData {
  Poly f;
  /// f(X) = X^d g(X + 1/X).
  Poly g;
  /// s^2 - 4 reduced modulo g.
  Poly theta;
};
TraceData trace_polynomial(const Poly& f);

struct CircleCount {
  int on = 0;
  int off = 0;
};
CircleCount unit_circle_root_count(const Poly& f);

/// Distinct real roots of a squarefree polynomial in the open interval (lo, hi);
/// the endpoints must not be roots.
int sturm_count(const Poly& f, const Rat& lo, const Rat& hi);
/// Distinct real roots of a squarefree polynomial.
int sturm_count_real(const Poly& f);

}  // namespace isoq
