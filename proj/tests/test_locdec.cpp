#include "isoq/locdec.hpp"
#include "isoq/transfer.hpp"

#include "doctest.h"

using namespace isoq;

namespace {

const Poly kGolden{1, -3, 1};
const Poly kPhi10{1, -1, 1, -1, 1};

Matrix diag(std::initializer_list<long> d) {
  std::vector<Rat> v;
  for (long x : d) v.emplace_back(x);
  return Matrix::diagonal(v);
}

ModuleSpec module(std::vector<ModuleComponent> c) { return ModuleSpec(std::move(c)); }

}  // namespace

TEST_CASE("finite fields") {
  const ff::Module circle(3, {{modp::ZPoly{1, 0, 1}, 1, 1}});
  CHECK(decide_finite_field({1, 1}, circle, 3).answer == Answer::yes);
  const LocalVerdict no = decide_finite_field({1, 2}, circle, 3);
  CHECK(no.answer == Answer::no);
  CHECK(no.reason == LocalReason::det_condition);

  // A type-0 component absorbs any determinant.
  const ff::Module with_one(5, {{modp::ZPoly{4, 1}, 1, 1}, {modp::ZPoly{1, 1, 1}, 1, 1}});
  for (long a : {1L, 2L, 3L, 4L}) CHECK(decide_finite_field({1, 1, a}, with_one, 5).answer == Answer::yes);

  // Over F_9 every element of F_3 is a square.
  CHECK(decide_finite_field({1, 2}, circle, 9).answer == Answer::yes);
  CHECK_THROWS_AS(decide_finite_field({1, 1}, circle, 6), InputError);

  // A single Jordan block of size 2 at 1 is never orthogonal.
  const ff::Module jordan(3, {{modp::ZPoly{2, 1}, 2, 1}});
  const LocalVerdict odd_block = decide_finite_field({1, 2}, jordan, 3);
  CHECK(odd_block.answer == Answer::no);
  CHECK(odd_block.reason == LocalReason::type0_parity);
  CHECK_THROWS_AS(decide_finite_field({1}, circle, 3), InputError);
}

TEST_CASE("p-adic examples") {
  CHECK(decide_padic(diag({1, 1, 1, 5}), module({{kPhi10, 1, 1}}), 5).answer == Answer::yes);
  const LocalVerdict det = decide_padic(diag({1, 3}), module({{kGolden, 1, 1}}), 3);
  CHECK(det.answer == Answer::no);
  CHECK(det.reason == LocalReason::det_condition);
  CHECK(det.place == "3");
  const LocalVerdict witt = decide_padic(diag({1, 1}), module({{kGolden, 1, 1}}), 11);
  CHECK(witt.answer == Answer::no);
  CHECK(witt.reason == LocalReason::witt_index);
  CHECK(decide_padic(diag({1, -5}), module({{kGolden, 1, 1}}), 11).answer == Answer::yes);
}

TEST_CASE("real place") {
  const ModuleSpec golden = module({{kGolden, 1, 1}});
  CHECK(decide_real({1, 1}, golden).answer == Answer::yes);
  const LocalVerdict no = decide_real({2, 0}, golden);
  CHECK(no.answer == Answer::no);
  CHECK(no.reason == LocalReason::signature);
  const LocalVerdict parity = decide_real({3, 1}, module({{kPhi10, 1, 1}}));
  CHECK(parity.answer == Answer::no);
  CHECK(parity.reason == LocalReason::parity);
  CHECK(decide_real({4, 0}, module({{kPhi10, 1, 1}})).answer == Answer::yes);
  CHECK(decide_real({2, 2}, module({{kPhi10, 1, 1}})).answer == Answer::yes);
  CHECK(decide_real({3, 2}, module({{kPhi10, 1, 1}, {Poly{-1, 1}, 1, 1}})).answer == Answer::yes);
  CHECK_THROWS_AS(decide_real({1, 0}, golden), InputError);
}

TEST_CASE("unpaired even type-0 blocks are rejected at every place") {
  const ModuleSpec jordan = module({{Poly{-1, 1}, 2, 1}, {kGolden, 1, 1}});
  CHECK(decide_real({2, 2}, jordan).reason == LocalReason::type0_parity);
  CHECK(decide_padic(diag({1, -1, 1, -1}), jordan, 7).answer == Answer::no);
  const ModuleSpec paired = module({{Poly{-1, 1}, 2, 2}});
  CHECK(decide_padic(diag({1, -1, 1, -1}), paired, 7).answer == Answer::yes);
  CHECK(decide_real({2, 2}, paired).answer == Answer::yes);
}

TEST_CASE("hyperbolic cancellation") {
  const LocalInvariants h2 = GlobalInvariants::hyperbolic(2).local(Place::finite(3));
  const LocalInvariants rest = cancel_hyperbolic(h2, 1);
  CHECK(rest.dim == 2);
  CHECK(rest == GlobalInvariants::hyperbolic(1).local(Place::finite(3)));
  const LocalInvariants form = invariants(diag({1, -1, 1, 5})).local(Place::finite(5));
  CHECK(cancel_hyperbolic(form, 1) == invariants(diag({1, 5})).local(Place::finite(5)));
  CHECK_THROWS(cancel_hyperbolic(h2, 3));
}

TEST_CASE("certificates pass every local test") {
  const std::vector<ModuleSpec> modules{
      module({{kGolden, 1, 1}}),
      module({{kPhi10, 1, 1}}),
      module({{kPhi10, 1, 1}, {Poly{-1, 1}, 1, 1}}),
      module({{kGolden, 1, 1}, {Poly{1, 0, 1}, 1, 1}}),
      module({{kGolden, 2, 1}}),
      module({{kGolden, 3, 1}}),
      module({{Poly{-1, 1}, 3, 1}, {Poly{1, 1}, 2, 2}}),
  };
  for (const ModuleSpec& m : modules) {
    const IsometryCertificate cert = construct(m);
    REQUIRE(verify(cert).ok);
    const GlobalInvariants inv = invariants(cert.gram);
    CHECK(decide_real(inv.signature, m).answer == Answer::yes);
    for (long p = 2; p < 60; ++p) {
      if (!is_prime(Int(p))) continue;
      CAPTURE(p);
      CHECK(decide_padic(inv, m, p).answer == Answer::yes);
    }
  }
}

TEST_CASE("reason names") {
  CHECK(to_string(Answer::undecided) == "UNDECIDED");
  CHECK(to_string(LocalReason::det_condition) == "DET_CONDITION");
}
