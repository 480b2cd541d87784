#pragma once
// Constructions: trace transfer of diagonal hermitian forms over
// K = Q[X]/(f), twisting by local non-norms, certificates for whole modules,
// and exact certificate verification.

#include "isoq/kxmodule.hpp"
#include "isoq/qspace.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace isoq {

/// Diagonal hermitian form <alpha_1, ..., alpha_m> over K = Q[X]/(f); each
/// alpha is a polynomial of degree < deg f fixed by X -> X^{-1}.
struct HermitianSpec {
  Poly f;
  std::vector<Poly> alphas;
};

struct IsometryCertificate {
  Matrix gram;
  Matrix t;
  ModuleSpec module;
};

/// Element a(X^{-1}) reduced modulo f; needs f(0) != 0.
Poly involution(const Poly& a, const Poly& f);
/// Tr_{K/Q} of a modulo f, from Newton power sums of f.
Rat field_trace(const Poly& a, const Poly& f);
/// The involution-fixed element b(X + X^{-1}) mod f.
Poly fixed_element(const Poly& b, const Poly& f);

IsometryCertificate transfer_gram(const HermitianSpec& spec);

struct TwistResult {
  HermitianSpec spec;
  Poly beta;  // in the variable s = X + X^{-1}
  /// Places where the Hasse classes of the two transferred forms differ.
  std::set<Place> changed;
};
/// Scales alpha_1 by the first involution-fixed beta (by height, up to
/// `candidates`) that changes the Hasse class at p, preferring the fewest
/// other changed places. Throws InputError when f is hyperbolic at p and
/// std::runtime_error when the search is exhausted.
TwistResult twist(const HermitianSpec& spec, const Int& p, int candidates = 200);

/// Certificate with determinant class d, steered through a free type-0 entry;
/// without one d must equal the forced determinant. Exponents above 1 are
/// realized by cyclic blocks on a hyperbolic frame.
IsometryCertificate construct_with_det(const ModuleSpec& spec, const Rat& d);
/// Certificate with whatever determinant the blocks produce.
IsometryCertificate construct(const ModuleSpec& spec);

/// Searches diagonal hermitian forms over Q[X]/(f) of rank n whose transfer is
/// equivalent to target; evaluates at most budget candidate tuples.
std::optional<IsometryCertificate> realize_component(const Poly& f, int n, const GlobalInvariants& target,
                                                     int budget = 4000);

/// Invariant factors of X I - t, read off as a module.
ModuleSpec module_of_matrix(const Matrix& t);

struct VerifyResult {
  bool ok = false;
  std::string reason;
};
VerifyResult verify(const IsometryCertificate& cert);

}  // namespace isoq
