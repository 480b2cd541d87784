#pragma once
// Dense polynomials with integer coefficients reduced modulo m. Field
// operations (inverse, gcd, factoring) assume m is prime.

#include "isoq/arith.hpp"
#include "isoq/poly.hpp"

#include <random>
#include <vector>

namespace isoq::modp {

/// Ascending coefficients in [0, m), no trailing zeros.
using ZPoly = std::vector<Int>;

ZPoly reduce(const Poly& f, const Int& m);
ZPoly reduce(const ZPoly& f, const Int& m);
/// Symmetric lift to (-m/2, m/2] as a rational polynomial.
Poly lift_symmetric(const ZPoly& f, const Int& m);
Poly lift(const ZPoly& f);

inline int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }
void trim(ZPoly& f);

ZPoly add(const ZPoly& a, const ZPoly& b, const Int& m);
ZPoly sub(const ZPoly& a, const ZPoly& b, const Int& m);
ZPoly mul(const ZPoly& a, const ZPoly& b, const Int& m);
ZPoly scale(const ZPoly& a, const Int& s, const Int& m);
/// Division by a polynomial whose leading coefficient is a unit mod m.
std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b, const Int& m);
ZPoly monic(const ZPoly& a, const Int& m);
ZPoly gcd(const ZPoly& a, const ZPoly& b, const Int& p);
/// s, t with s a + t b = gcd(a, b) (monic), over F_p.
void extended_gcd(const ZPoly& a, const ZPoly& b, const Int& p, ZPoly& g, ZPoly& s, ZPoly& t);
ZPoly derivative(const ZPoly& a, const Int& m);
ZPoly powmod(const ZPoly& base, const Int& e, const ZPoly& modulus, const Int& m);
Int eval(const ZPoly& a, const Int& x, const Int& m);

/// Reciprocal f(0)^{-1} X^deg f(1/X) mod m; f(0) must be a unit.
ZPoly star(const ZPoly& f, const Int& m);

bool is_irreducible(const ZPoly& f, const Int& p);
/// Monic irreducible factors with multiplicity over F_p, sorted.
std::vector<std::pair<ZPoly, int>> factor(const ZPoly& f, const Int& p);
/// Monic irreducible factors of a squarefree monic polynomial over F_p, sorted.
std::vector<ZPoly> factor_squarefree(const ZPoly& f, const Int& p);
bool is_squarefree(const ZPoly& f, const Int& p);

/// Lift a coprime factorization f = prod(factors) mod p (monic f, monic
/// factors) to modulus p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f_integral, const std::vector<ZPoly>& factors,
                               const Int& p, int k);

/// All monic polynomials of the given degree over F_p in lexicographic order.
std::vector<ZPoly> monic_polys(int degree, const Int& p);

}  // namespace isoq::modp
