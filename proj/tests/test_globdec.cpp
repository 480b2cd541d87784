#include "isoq/globdec.hpp"

#include "doctest.h"

#include <random>

using namespace isoq;

namespace {

const Poly kGolden{1, -3, 1};
const Poly kPhi10{1, -1, 1, -1, 1};
const Poly kCircle{1, 0, 1};
const Poly kMinus{-1, 1};
const Poly kPlus{1, 1};

ModuleSpec module(std::vector<ModuleComponent> c) { return ModuleSpec(std::move(c)); }

GlobalInvariants diag(std::initializer_list<long> d) {
  std::vector<Rat> v;
  for (long x : d) v.emplace_back(x);
  return GlobalInvariants::of_diagonal(v);
}

Poly quadratic(long s) { return Poly{1, -s, 1}; }

// X^2 - sX + 1 is hyperbolic at p exactly when s^2 - 4 is a p-adic square.
std::optional<long> first_common_nonsplit(long s1, long s2, long bound) {
  for (long p = 2; p <= bound; ++p) {
    if (!is_prime(Int(p))) continue;
    const Place v = Place::finite(p);
    if (!is_local_square(Rat(s1 * s1 - 4), v) && !is_local_square(Rat(s2 * s2 - 4), v)) return p;
  }
  return std::nullopt;
}

void check_certificate(const Verdict& v, const GlobalInvariants& form, const ModuleSpec& m) {
  if (!v.certificate) return;
  CHECK(verify(*v.certificate).ok);
  CHECK(v.certificate->module == m);
  CHECK(invariants(v.certificate->gram) == form);
}

}  // namespace

TEST_CASE("irreducible examples") {
  const ModuleSpec golden = module({{kGolden, 1, 1}});
  Verdict v = decide_global(diag({1, -5}), golden);
  CHECK(v.answer == Answer::yes);
  REQUIRE(v.certificate.has_value());
  check_certificate(v, diag({1, -5}), golden);

  v = decide_global(diag({1, 5}), golden);
  CHECK(v.answer == Answer::no);
  CHECK(v.reason == GlobalReason::det);

  const ModuleSpec phi = module({{kPhi10, 1, 1}});
  v = decide_global(diag({1, 1, 1, 5}), phi);
  CHECK(v.answer == Answer::yes);
  check_certificate(v, diag({1, 1, 1, 5}), phi);

  v = decide_global(diag({1, 1, 1, 1}), phi);
  CHECK(v.answer == Answer::no);
  CHECK(v.reason == GlobalReason::det);

  CHECK(decide_irreducible(diag({1, -5}), kGolden, 1).answer == Answer::yes);
  CHECK(decide_irreducible(diag({2, 2}), kGolden, 1).reason == GlobalReason::det);
  // Signature (2, 0) cannot carry roots off the unit circle.
  CHECK(decide_irreducible(diag({1, 5}), kGolden, 1).answer == Answer::no);
  CHECK(decide_irreducible(diag({-1, -1, -1, -5}), kPhi10, 1).answer == Answer::yes);
}

TEST_CASE("hyperbolic module on a hyperbolic space") {
  const GlobalInvariants h2 = GlobalInvariants::hyperbolic(2);
  CHECK(decide_global(h2, module({{kGolden, 2, 1}})).answer == Answer::yes);
  const Verdict witt = decide_global(diag({1, 1, 1, -5}), module({{kGolden, 2, 1}}));
  CHECK(witt.answer == Answer::no);
  CHECK(witt.reason == GlobalReason::witt);
}

TEST_CASE("support sets") {
  const PlaceSupport s = compute_support(diag({1, 1, 1, 5}), module({{kPhi10, 1, 1}}));
  CHECK(s.S == std::set<Place>{Place::real(), Place::finite(2)});
  CHECK(s.Sigma.count(Place::finite(2)));
  CHECK(s.Sigma.count(Place::real()));
  CHECK(compute_support(GlobalInvariants::hyperbolic(2), module({{kGolden, 2, 1}})).S.empty());
  CHECK(compute_support(diag({1, 1, 1, -5}), module({{kGolden, 1, 1}, {kCircle, 1, 1}})).T.empty());
}

TEST_CASE("pure type-1 modules with two components") {
  const ModuleSpec m = module({{kGolden, 1, 1}, {kCircle, 1, 1}});
  for (auto form : {diag({1, 1, 1, -5}), diag({-1, -1, -1, 5}), diag({2, 2, 1, -5}), diag({1, 3, 3, -5}),
                    diag({7, 7, 1, -5})}) {
    const Verdict v = decide_type1(form, m);
    CHECK(v.answer != Answer::undecided);
    check_certificate(v, form, m);
  }
  CHECK(decide_type1(diag({1, 1, 1, 5}), m).reason == GlobalReason::det);
  // r = 1 agrees with the irreducible path.
  for (auto form : {diag({1, -5}), diag({1, 5}), diag({-1, 5}), diag({3, -15})})
    CHECK(decide_type1(form, module({{kGolden, 1, 1}})).answer == decide_irreducible(form, kGolden, 1).answer);
}

TEST_CASE("mixed modules") {
  const ModuleSpec big = module({{kMinus, 1, 3}, {kPhi10, 1, 1}});
  for (auto form : {diag({1, 1, 1, 1, 1, 1, 1}), diag({-1, -2, -3, -5, -7, -11, -13}), diag({1, -1, 3, -3, 5, 7, -2})})
    CHECK(decide_global(form, big).answer == Answer::yes);

  const ModuleSpec one = module({{kMinus, 1, 1}, {kPhi10, 1, 1}});
  const Verdict v = decide_global(diag({1, 1, 1, 1, 5}), one);
  CHECK(v.answer == Answer::yes);
  check_certificate(v, diag({1, 1, 1, 1, 5}), one);

  // Type-0 part of determinant -1 must be a hyperbolic plane.
  const ModuleSpec two = module({{kMinus, 1, 1}, {kPlus, 1, 1}, {kGolden, 1, 1}});
  int anisotropic_seen = 0;
  const std::vector<long> entries{-11, -7, -5, -3, -2, -1, 1, 2, 3, 5, 7, 11};
  for (long a : entries)
    for (long b : entries) {
      if (b < a) continue;
      for (long c : entries) {
        if (c < b) continue;
        const GlobalInvariants form = GlobalInvariants::of_diagonal({1, Rat(a), Rat(b), Rat(c)});
        if (form.det.rep() != 5 || form.signature.pos == 0 || form.signature.neg == 0) continue;
        const Verdict w = decide_global(form, two);
        if (global_witt_index(form) == 0) {
          ++anisotropic_seen;
          CHECK(w.answer == Answer::no);
        }
        check_certificate(w, form, two);
      }
    }
  CHECK(anisotropic_seen > 0);
}

TEST_CASE("unpaired even type-0 blocks") {
  const Verdict v = decide_global(GlobalInvariants::hyperbolic(1), module({{kMinus, 2, 1}}));
  CHECK(v.answer == Answer::no);
  CHECK(v.reason == GlobalReason::type0_parity);
  CHECK(decide_global(GlobalInvariants::hyperbolic(2), module({{kMinus, 2, 2}})).answer == Answer::yes);
}

TEST_CASE("pair places") {
  // Both are irreducible over Q_2 as well as over Q_3, so 2 is the smallest witness.
  CHECK(first_common_nonsplit(3, 0, 100) == 2L);
  CHECK(find_pair_place(kGolden, kCircle, 100) == Int(2));
  CHECK(locally_hyperbolic(kGolden, Place::finite(3)) == false);
  CHECK(locally_hyperbolic(kCircle, Place::finite(3)) == false);
  CHECK(find_pair_place(kGolden, kGolden, 100) == Int(2));
  CHECK(find_pair_place(kCircle, kCircle, 100) == Int(2));

  // No common non-split prime up to 30 for these two, by the square-class oracle.
  REQUIRE_FALSE(first_common_nonsplit(335, 338, 30).has_value());
  CHECK_FALSE(find_pair_place(quadratic(335), quadratic(338), 30).has_value());
  const auto expected = first_common_nonsplit(335, 338, 1000);
  REQUIRE(expected.has_value());
  CHECK(find_pair_place(quadratic(335), quadratic(338), 1000) == Int(*expected));

  for (long s1 = 3; s1 < 30; s1 += 4)
    for (long s2 = s1 + 1; s2 < 40; s2 += 5) {
      const auto want = first_common_nonsplit(s1, s2, 500);
      const auto got = find_pair_place(quadratic(s1), quadratic(s2), 500);
      CHECK(got == find_pair_place_serial(quadratic(s1), quadratic(s2), 500));
      CHECK(got.has_value() == want.has_value());
      if (want) CHECK(*got == *want);
    }
}

TEST_CASE("constructed certificates are accepted") {
  const std::vector<ModuleSpec> modules{
      module({{kGolden, 1, 2}}),
      module({{kPhi10, 1, 1}, {kCircle, 1, 1}}),
      module({{kMinus, 1, 1}, {kPhi10, 1, 1}}),
      module({{kMinus, 1, 2}, {kGolden, 1, 1}, {kCircle, 1, 1}}),
      module({{kGolden, 2, 1}, {kCircle, 1, 1}}),
  };
  for (const ModuleSpec& m : modules) {
    const IsometryCertificate cert = construct(m);
    REQUIRE(verify(cert).ok);
    const Verdict v = decide_global(cert.gram, m);
    CHECK(v.answer == Answer::yes);
    if (v.certificate) CHECK(verify(*v.certificate).ok);
  }
}

TEST_CASE("monotone prime bound") {
  const ModuleSpec m = module({{quadratic(335), 1, 1}, {quadratic(338), 1, 1}});
  const GlobalInvariants form = GlobalInvariants::of_diagonal({1, 1, -1, Rat(-(335L * 335 - 4) * (338L * 338 - 4))});
  Answer previous = Answer::undecided;
  for (long bound : {10L, 30L, 100L, 1000L}) {
    DecideOptions opt;
    opt.prime_bound = bound;
    const Verdict v = decide_global(form, m, opt);
    if (previous != Answer::undecided) CHECK(v.answer == previous);
    if (v.answer == Answer::undecided) CHECK(v.search_bound == bound);
    previous = v.answer;
  }
  CHECK(parity_assertion_count() > 0);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(decide_global(diag({1, 1, 1}), module({{kGolden, 1, 1}})), InputError);
  CHECK_THROWS_AS(decide_type1(diag({1, -5, 1}), module({{kGolden, 1, 1}, {kMinus, 1, 1}})), InputError);
  CHECK(to_string(GlobalReason::parity_disconnected_up_to_bound) == "PARITY_DISCONNECTED_UP_TO_BOUND");
}
