#pragma once
// Self-dual torsion k[X]-modules: descriptions, type split, odd
// semisimplification, and the shape of a module after completion at a place.

#include "isoq/padic.hpp"

#include <optional>
#include <vector>

namespace isoq {

struct ModuleComponent {
  Poly f;  // monic irreducible
  int e = 1;
  int n = 1;
  friend bool operator==(const ModuleComponent&, const ModuleComponent&) = default;
};

/// Direct sum of [Q[X]/(f^e)]^n. Components with equal (f, e) are merged and
/// sorted canonically on construction.
class ModuleSpec {
public:
  ModuleSpec() = default;
  explicit ModuleSpec(std::vector<ModuleComponent> components);

  const std::vector<ModuleComponent>& components() const { return c_; }
  bool empty() const { return c_.empty(); }
  int dim() const;
  bool is_semisimple() const;

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;

private:
  std::vector<ModuleComponent> c_;
};

struct TypeSplit {
  std::vector<ModuleComponent> m0, m1, m2;
  int dim = 0;
  int dim0_plus = 0;   // total dimension on X - 1
  int dim0_minus = 0;  // total dimension on X + 1
  int m2_half_dim = 0;
  int dim0() const { return dim0_plus + dim0_minus; }
  int dim1() const { return dim - dim0() - 2 * m2_half_dim; }
};

/// Checks irreducibility, exponents and self-duality; throws InputError.
TypeSplit validate(const ModuleSpec& spec);

Poly characteristic_polynomial(const ModuleSpec& spec);

struct OddSemisimplification {
  ModuleSpec mbar;
  int tau = 0;
};
OddSemisimplification odd_semisimplification(const ModuleSpec& spec);

bool is_hyperbolic_module(const ModuleSpec& spec);

/// False when some (X -+ 1)^e with e even has odd multiplicity. The form
/// induced on such a layer is alternating, so no orthogonal isometry has
/// this module.
bool type0_blocks_paired(const ModuleSpec& spec);

struct LocalModuleShape {
  Place place;
  int n0_dim = 0;
  int n1_dim = 0;
  int n2_half_dim = 0;
  /// Dimension carried by factors whose local type is unknown; zero iff resolved.
  int unresolved_dim = 0;
  bool resolved = true;
};

/// Local type split of a semisimple module. Invariant:
/// n0 + n1 + 2 n2_half + unresolved = dim.
LocalModuleShape localize(const ModuleSpec& spec, const Place& v);

/// Memoized local_factor_pairing; safe for concurrent callers.
const LocalFactorization& cached_pairing(const Poly& f, const Int& p);

/// Whether a type-1 polynomial is hyperbolic over the completion at v
/// (nullopt when the local pairing is unresolved).
std::optional<bool> locally_hyperbolic(const Poly& f, const Place& v);

/// (f(1) f(-1))^n for one component.
Rat component_det(const ModuleComponent& c);

}  // namespace isoq
