#include "isoq/locdec.hpp"

#include <stdexcept>

namespace isoq {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "YES";
    case Answer::no: return "NO";
    case Answer::undecided: return "UNDECIDED";
  }
  return "?";
}

std::string to_string(LocalReason r) {
  switch (r) {
    case LocalReason::det_condition: return "DET_CONDITION";
    case LocalReason::witt_index: return "WITT_INDEX";
    case LocalReason::signature: return "SIGNATURE";
    case LocalReason::parity: return "PARITY";
    case LocalReason::pairing_unresolved: return "PAIRING_UNRESOLVED";
    case LocalReason::type0_parity: return "TYPE0_PARITY";
  }
  return "?";
}

namespace {

int prime_power_exponent(const Int& q, const Int& p) {
  Int rest = q;
  int k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1 || k == 0) throw InputError("q = " + q.get_str() + " is not a power of " + p.get_str());
  return k;
}

Rat fm_product(const ModuleSpec& m) {
  Rat out = 1;
  for (auto& c : m.components()) out *= component_det(c);
  return out;
}

}  // namespace

LocalVerdict decide_finite_field(const std::vector<Int>& q_diag, const ff::Module& spec, const Int& q) {
  const Int& p = spec.p();
  if (p == 2) throw InputError("even characteristic is not supported");
  const int k = prime_power_exponent(q, p);
  if (static_cast<int>(q_diag.size()) != spec.dim()) throw InputError("dimension mismatch between form and module");
  const ff::OddPart odd = ff::odd_semisimplification(spec);
  LocalVerdict v{Answer::yes, LocalReason::det_condition, "F_" + q.get_str()};
  if (!ff::type0_blocks_paired(spec)) return {Answer::no, LocalReason::type0_parity, v.place};
  if (odd.has_type0) return v;
  // det(q) F(1) F(-1) after removing H^tau, which has determinant (-1)^tau.
  Int value = odd.tau % 2 ? p - 1 : Int(1);
  for (auto& a : q_diag) {
    const Int r = ((a % p) + p) % p;
    if (r == 0) throw InputError("degenerate form over F_q");
    value = value * r % p;
  }
  for (auto& c : odd.mbar.components()) {
    const Int at1 = modp::eval(c.f, Int(1), p), atm1 = modp::eval(c.f, p - 1, p);
    for (int i = 0; i < c.n; ++i) value = value * at1 % p * atm1 % p;
  }
  // Every element of F_p is a square in F_{p^k} for even k.
  const bool square = k % 2 == 0 || legendre(value, p) == 1;
  v.answer = square ? Answer::yes : Answer::no;
  return v;
}

LocalInvariants cancel_hyperbolic(const LocalInvariants& form, int planes) {
  if (planes == 0) return form;
  LocalInvariants out = form;
  out.dim -= 2 * planes;
  if (out.dim < 0) throw std::domain_error("hyperbolic part larger than the form");
  const Place& v = form.place;
  const Rat sign(planes % 2 ? -1 : 1);
  out.det = local_square_class(Rat(form.det) * sign, v);
  // w(q) = w(H^t) w(q') ((-1)^t, det q').
  Symbol w_h = (planes * (planes - 1) / 2) % 2 ? hilbert(Rat(-1), Rat(-1), v) : Symbol::plus;
  out.hasse = form.hasse * w_h * hilbert(sign, Rat(out.det), v);
  if (v.is_real()) out.signature = {form.signature.pos - planes, form.signature.neg - planes};
  return out;
}

LocalVerdict decide_padic(const GlobalInvariants& form, const ModuleSpec& spec, const Int& p) {
  if (form.dim != spec.dim()) throw InputError("dimension mismatch between form and module");
  const Place v = Place::finite(p);
  if (!type0_blocks_paired(spec)) return {Answer::no, LocalReason::type0_parity, v.to_string()};
  const auto odd = odd_semisimplification(spec);
  LocalVerdict out{Answer::no, LocalReason::witt_index, v.to_string()};
  const LocalInvariants local = form.local(v);
  if (local_witt_index(local) < odd.tau) return out;
  const LocalInvariants reduced = cancel_hyperbolic(local, odd.tau);
  const LocalModuleShape shape = localize(odd.mbar, v);
  if (shape.n1_dim > 0) {
    // Unknown factors only move dimension between the local type-1 and type-2
    // parts, which does not matter once a type-1 part is certain.
    out.reason = LocalReason::det_condition;
    if (shape.n0_dim > 0) {
      out.answer = Answer::yes;
    } else {
      const Rat value = Rat(reduced.det) * fm_product(odd.mbar);
      out.answer = is_local_square(value, v) ? Answer::yes : Answer::no;
    }
    return out;
  }
  const bool witt_ok = local_witt_index(reduced) >= shape.n2_half_dim + shape.unresolved_dim / 2;
  out.answer = witt_ok ? Answer::yes : Answer::no;
  if (shape.resolved) return out;
  // Unknown factors are either all paired (Witt criterion above) or include a
  // symmetric one (determinant criterion); only agreement settles the answer.
  const bool det_ok = shape.n0_dim > 0 || is_local_square(Rat(reduced.det) * fm_product(odd.mbar), v);
  if (det_ok != witt_ok) {
    out.answer = Answer::undecided;
    out.reason = LocalReason::pairing_unresolved;
  }
  return out;
}

LocalVerdict decide_padic(const Matrix& gram, const ModuleSpec& spec, const Int& p) {
  return decide_padic(invariants(gram), spec, p);
}

LocalVerdict decide_real(const Signature& sig, const ModuleSpec& spec) {
  if (sig.pos + sig.neg != spec.dim()) throw InputError("signature does not match module dimension");
  if (!type0_blocks_paired(spec)) return {Answer::no, LocalReason::type0_parity, "inf"};
  const auto odd = odd_semisimplification(spec);
  const LocalModuleShape shape = localize(odd.mbar, Place::real());
  const int need = odd.tau + shape.n2_half_dim;
  LocalVerdict out{Answer::no, LocalReason::signature, "inf"};
  if (sig.pos < need || sig.neg < need) return out;
  if (shape.n0_dim == 0 && ((sig.pos - need) % 2 != 0 || (sig.neg - need) % 2 != 0)) {
    out.reason = LocalReason::parity;
    return out;
  }
  out.answer = Answer::yes;
  return out;
}

}  // namespace isoq
