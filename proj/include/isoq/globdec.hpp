#pragma once
// Global decision engine over Q: irreducible minimal polynomials, pure type-1
// modules through the parity/connectivity machinery, and mixed modules.

#include "isoq/locdec.hpp"
#include "isoq/transfer.hpp"

#include <optional>
#include <set>
#include <string>

namespace isoq {

enum class GlobalReason {
  none,
  det,
  signature,
  hyperbolicity,
  local_fail,
  witt,
  parity_disconnected_up_to_bound,
  pairing_unresolved,
  type0_parity,
};
std::string to_string(GlobalReason r);

struct Verdict {
  Answer answer = Answer::undecided;
  GlobalReason reason = GlobalReason::none;
  /// Place violating a local condition, when the reason names one.
  std::optional<Place> place;
  std::optional<IsometryCertificate> certificate;
  /// Prime bound used by the edge search, reported with UNDECIDED.
  std::optional<long> search_bound;
};

struct DecideOptions {
  long prime_bound = 10000;
  /// Search for an explicit certificate on YES (best effort).
  bool certificate = true;
  int certificate_budget = 4000;
};

struct PlaceSupport {
  std::set<Place> S;      // w(q) differs from the hyperbolic Hasse class
  std::set<Place> T;      // D = sum_{i<j} (d_i, d_j) is nontrivial
  std::set<Place> Sigma;  // S, T, 2 and inf
};
PlaceSupport compute_support(const GlobalInvariants& form, const ModuleSpec& spec);

Verdict decide_irreducible(const GlobalInvariants& form, const Poly& f, int m, const DecideOptions& opt = {});
Verdict decide_type1(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt = {});
Verdict decide_mixed(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt = {});
Verdict decide_global(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt = {});
Verdict decide_global(const Matrix& gram, const ModuleSpec& spec, const DecideOptions& opt = {});

/// Smallest prime p <= bound at which neither f_i nor f_j is hyperbolic.
std::optional<Int> find_pair_place(const Poly& fi, const Poly& fj, long bound);
/// Serial reference for find_pair_place.
std::optional<Int> find_pair_place_serial(const Poly& fi, const Poly& fj, long bound);

/// Number of parity-bookkeeping assertions evaluated so far (each one throws
/// std::logic_error on failure).
long parity_assertion_count();

}  // namespace isoq
