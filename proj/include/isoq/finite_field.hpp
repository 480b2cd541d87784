#pragma once
// Self-dual modules over F_p and the exhaustive isometry oracle used to
// cross-check the finite-field decision procedure.

#include "isoq/polymod.hpp"

#include <string>
#include <vector>

namespace isoq::ff {

struct Component {
  modp::ZPoly f;  // monic irreducible over F_p, f(0) != 0
  int e = 1;
  int n = 1;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Module over F_p; components merged and sorted canonically.
class Module {
public:
  Module() = default;
  Module(Int p, std::vector<Component> components);

  const Int& p() const { return p_; }
  const std::vector<Component>& components() const { return c_; }
  int dim() const;
  std::string to_string() const;

  friend bool operator==(const Module&, const Module&) = default;
  friend bool operator<(const Module& a, const Module& b) { return a.to_string() < b.to_string(); }

private:
  Int p_ = 3;
  std::vector<Component> c_;
};

/// Checks irreducibility and self-duality over F_p; throws InputError.
void validate(const Module& m);

struct OddPart {
  Module mbar;
  int tau = 0;
  bool has_type0 = false;
};
OddPart odd_semisimplification(const Module& m);

/// False when some (X -+ 1)^e with e even has odd multiplicity; no orthogonal
/// isometry has such a module.
bool type0_blocks_paired(const Module& m);

/// All self-dual modules of the given dimension over F_p.
std::vector<Module> self_dual_modules(const Int& p, int dim);

using MatrixFp = std::vector<std::vector<long>>;

/// Module of an invertible matrix over F_p from kernel ranks of f(t)^k.
Module module_of(const MatrixFp& t, long p);

/// Diagonal entries of a congruent diagonal form over F_p.
std::vector<long> diagonalize(const MatrixFp& g, long p);

struct OraclePair {
  std::vector<long> form;  // diagonal representative
  Module module;
  bool realized = false;   // some isometry of the form has this module
  bool decided = false;    // decide_finite_field answer
};

struct OracleReport {
  long q = 0;
  int dim = 0;
  long forms_enumerated = 0;    // nondegenerate symmetric matrices
  long isometries_enumerated = 0;
  std::vector<OraclePair> pairs;
  std::vector<OraclePair> mismatches;
};

/// Exhaustive check over F_q (q an odd prime). parallel = false runs the
/// serial reference enumeration.
OracleReport oracle(long q, int dim, bool parallel = true);

}  // namespace isoq::ff
