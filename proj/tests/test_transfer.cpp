#include "isoq/transfer.hpp"

#include "doctest.h"

#include <random>

using namespace isoq;

namespace {

const Poly kGolden{1, -3, 1};
const Poly kPhi10{1, -1, 1, -1, 1};
const Poly kSalem4{1, -3, 3, -3, 1};
const Poly kCircle{1, 0, 1};

ModuleSpec module(std::vector<ModuleComponent> c) { return ModuleSpec(std::move(c)); }

Matrix rows(std::vector<std::vector<Rat>> r) { return Matrix::from_rows(r); }

std::set<Place> hasse_difference(const GlobalInvariants& a, const GlobalInvariants& b) {
  std::set<Place> out;
  for (auto& v : a.hasse_support)
    if (!b.hasse_support.count(v)) out.insert(v);
  for (auto& v : b.hasse_support)
    if (!a.hasse_support.count(v)) out.insert(v);
  return out;
}

Poly random_fixed(std::mt19937_64& rng, const Poly& f) {
  std::uniform_int_distribution<long> coef(-4, 4);
  for (;;) {
    std::vector<Rat> b;
    for (int i = 0; i < f.degree() / 2; ++i) b.emplace_back(coef(rng));
    const Poly alpha = fixed_element(Poly(b), f);
    if (!alpha.is_zero()) return alpha;
  }
}

}  // namespace

TEST_CASE("element arithmetic in K") {
  CHECK(involution(Poly::x(), kCircle) == Poly{0, -1});
  CHECK(field_trace(Poly{1}, kGolden) == 2);
  CHECK(field_trace(Poly::x(), kGolden) == 3);
  CHECK(field_trace(Poly{1}, kPhi10) == 4);
  CHECK(field_trace(Poly::x(), kPhi10) == 1);
  for (const Poly& f : {kGolden, kPhi10, kSalem4}) {
    const Poly a = fixed_element(Poly{2, -1}, f);
    CHECK(involution(a, f) == a);
    CHECK(involution(involution(Poly{1, 2, 3}, f), f) == Poly{1, 2, 3} % f);
  }
}

TEST_CASE("transfer examples") {
  const auto circle = transfer_gram({kCircle, {Poly{1}}});
  CHECK(circle.gram == Matrix::diagonal({2, 2}));
  CHECK(circle.t == rows({{0, -1}, {1, 0}}));
  const auto golden = transfer_gram({kGolden, {Poly{1}}});
  CHECK(golden.gram == rows({{2, 3}, {3, 2}}));
  CHECK(golden.gram.det() == -5);
  CHECK(golden.t == rows({{0, -1}, {1, 3}}));
  CHECK(verify(golden).ok);
  const auto negated = transfer_gram({kGolden, {Poly{-1}}});
  CHECK(negated.gram == Rat(-1) * golden.gram);
  CHECK(negated.t == golden.t);
  CHECK_THROWS_AS(transfer_gram({kGolden, {Poly::x()}}), InputError);
  CHECK_THROWS_AS(transfer_gram({kGolden, {Poly{}}}), InputError);
  CHECK_THROWS_AS(transfer_gram({Poly{-2, 1}, {Poly{1}}}), InputError);
}

TEST_CASE("transfer determinant and real signature") {
  std::mt19937_64 rng(9);
  for (const Poly& f : {kCircle, kGolden, kPhi10, kSalem4})
    for (int m = 1; m <= 2; ++m)
      for (int trial = 0; trial < 4; ++trial) {
        HermitianSpec spec{f, {}};
        for (int i = 0; i < m; ++i) spec.alphas.push_back(random_fixed(rng, f));
        const IsometryCertificate cert = transfer_gram(spec);
        CHECK(verify(cert).ok);
        const Rat fm = f.pow(static_cast<unsigned>(m)).eval(1) * f.pow(static_cast<unsigned>(m)).eval(-1);
        CHECK(SquareClass(cert.gram.det()) == SquareClass(fm));
        if (unit_circle_root_count(f).off == 0) {
          const GlobalInvariants inv = invariants(cert.gram);
          CHECK(inv.signature.pos % 2 == 0);
          CHECK(inv.signature.neg % 2 == 0);
        }
      }
}

TEST_CASE("twist moves the Hasse class at the target prime") {
  const TwistResult golden = twist({kGolden, {Poly{1}}}, 3);
  const auto before = invariants(transfer_gram({kGolden, {Poly{1}}}).gram);
  const auto after = invariants(transfer_gram(golden.spec).gram);
  CHECK(before.dim == after.dim);
  CHECK(before.det == after.det);
  CHECK(golden.changed.count(Place::finite(3)));
  CHECK(hasse_difference(before, after) == golden.changed);
  CHECK(golden.changed.size() <= 2);

  const TwistResult circle = twist({kCircle, {Poly{1}}}, 2);
  CHECK(circle.changed.count(Place::finite(2)));
  CHECK_THROWS_AS(twist({kGolden, {Poly{1}}}, 11), InputError);
}

TEST_CASE("verification") {
  IsometryCertificate cert = transfer_gram({kGolden, {Poly{1}}});
  CHECK(verify(cert).reason == "ok");
  IsometryCertificate tampered = cert;
  tampered.t(0, 0) = 1;
  CHECK_FALSE(verify(tampered).ok);
  IsometryCertificate scaled{Matrix::identity(2), Rat(2) * rows({{0, -1}, {1, 0}}), module({{kCircle, 1, 1}})};
  CHECK(verify(scaled).reason == "t is not an isometry");
  IsometryCertificate wrong_module = cert;
  wrong_module.module = module({{kCircle, 1, 1}});
  CHECK(verify(wrong_module).reason == "module mismatch");
  IsometryCertificate degenerate{Matrix(2, 2), Matrix::identity(2), module({{Poly{-1, 1}, 1, 2}})};
  CHECK(verify(degenerate).reason == "gram degenerate");
  IsometryCertificate asymmetric{rows({{1, 2}, {0, 1}}), Matrix::identity(2), module({{Poly{-1, 1}, 1, 2}})};
  CHECK(verify(asymmetric).reason == "gram not symmetric");
}

TEST_CASE("module of a matrix") {
  CHECK(module_of_matrix(Matrix::identity(3)) == module({{Poly{-1, 1}, 1, 3}}));
  CHECK(module_of_matrix(rows({{1, 1}, {0, 1}})) == module({{Poly{-1, 1}, 2, 1}}));
  CHECK(module_of_matrix(rows({{0, -1}, {1, 3}})) == module({{kGolden, 1, 1}}));
  const Matrix jordan = rows({{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  CHECK(module_of_matrix(jordan) == module({{kCircle, 2, 1}}));
}

TEST_CASE("construction with a prescribed determinant") {
  const auto diag = construct_with_det(module({{Poly{-1, 1}, 1, 2}}), -5);
  CHECK(diag.gram == Matrix::diagonal({1, -5}));
  CHECK(diag.t == Matrix::identity(2));

  const auto mixed = construct_with_det(module({{Poly{-1, 1}, 1, 1}, {kPhi10, 1, 1}}), 1);
  CHECK(mixed.gram.rows() == 5);
  CHECK(SquareClass(mixed.gram.det()).is_square());
  CHECK(verify(mixed).ok);

  const Poly g{-2, 1};
  const auto pair = construct(module({{g, 1, 1}, {star(g), 1, 1}}));
  CHECK(pair.gram == rows({{0, 1}, {1, 0}}));
  CHECK(pair.t == Matrix::diagonal({2, Rat(1, 2)}));

  const auto phi = construct(module({{kPhi10, 1, 1}}));
  CHECK(phi.gram.rows() == 4);
  CHECK(SquareClass(phi.gram.det()).rep() == 5);
  CHECK_THROWS_WITH_AS(construct_with_det(module({{kPhi10, 1, 1}}), 1), doctest::Contains("determinant forced"),
                       InputError);
  CHECK_THROWS_AS(construct(module({{Poly{-1, 1}, 2, 1}})), InputError);
}

TEST_CASE("constructions verify for higher exponents") {
  const Poly g{-2, 1};
  const std::vector<ModuleSpec> modules{
      module({{kGolden, 2, 1}}),
      module({{kCircle, 3, 1}}),
      module({{kPhi10, 2, 1}, {kGolden, 1, 1}}),
      module({{Poly{-1, 1}, 3, 1}}),
      module({{Poly{1, 1}, 2, 2}, {Poly{-1, 1}, 1, 1}}),
      module({{g, 2, 1}, {star(g), 2, 1}}),
      module({{kGolden, 2, 3}}),
  };
  for (const ModuleSpec& m : modules) {
    const IsometryCertificate cert = construct(m);
    CAPTURE(cert.module.dim());
    CHECK(verify(cert).ok);
    if (!validate(m).m0.empty()) {
      const IsometryCertificate steered = construct_with_det(m, -7);
      CHECK(verify(steered).ok);
      CHECK(SquareClass(steered.gram.det()).rep() == -7);
    }
  }
}

TEST_CASE("component realization") {
  const GlobalInvariants target = invariants(Matrix::diagonal({1, -5}));
  const auto cert = realize_component(kGolden, 1, target);
  REQUIRE(cert.has_value());
  CHECK(verify(*cert).ok);
  CHECK(invariants(cert->gram) == target);
  CHECK_FALSE(realize_component(kGolden, 1, invariants(Matrix::diagonal({1, 5}))).has_value());
}
