#pragma once
// Decisions over the completions of Q and over finite fields.

#include "isoq/finite_field.hpp"
#include "isoq/kxmodule.hpp"
#include "isoq/qspace.hpp"

#include <string>

namespace isoq {

enum class Answer { yes, no, undecided };
std::string to_string(Answer a);

enum class LocalReason { det_condition, witt_index, signature, parity, pairing_unresolved, type0_parity };
std::string to_string(LocalReason r);

struct LocalVerdict {
  Answer answer = Answer::undecided;
  /// The criterion that settled the answer.
  LocalReason reason = LocalReason::pairing_unresolved;
  /// "inf", a prime, or "F_q".
  std::string place;
};

/// q_diag holds a diagonalization over F_q with entries in the prime field;
/// q must be a power of the characteristic of spec.
LocalVerdict decide_finite_field(const std::vector<Int>& q_diag, const ff::Module& spec, const Int& q);

LocalVerdict decide_padic(const GlobalInvariants& form, const ModuleSpec& spec, const Int& p);
LocalVerdict decide_padic(const Matrix& gram, const ModuleSpec& spec, const Int& p);

LocalVerdict decide_real(const Signature& sig, const ModuleSpec& spec);

/// Local invariants of the complement of H^planes inside form.
LocalInvariants cancel_hyperbolic(const LocalInvariants& form, int planes);

}  // namespace isoq
