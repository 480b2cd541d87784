#include "isoq/padic.hpp"

#include "doctest.h"

using namespace isoq;

namespace {

const Poly kGolden{1, -3, 1};
const Poly kPhi10{1, -1, 1, -1, 1};
const Poly kSalem4{1, -3, 3, -3, 1};

LocalFactor linear_factor(long root, long p, FactorTag tag, int partner) {
  LocalFactor out;
  out.coeffs = modp::ZPoly{Int(((-root) % p + p) % p), Int(1)};
  out.degree = 1;
  out.tag = tag;
  out.partner = partner;
  return out;
}

// Unramified oracle: at p not dividing disc(f), Q_p-factors reduce to the
// F_p-factors, and a factor is symmetric iff its reduction is star-fixed.
bool hyperbolic_by_reduction(const Poly& f, const Int& p) {
  for (auto& [g, e] : modp::factor(modp::reduce(f, p), p))
    if (modp::star(g, p) == g) return false;
  return true;
}

}  // namespace

TEST_CASE("quadratic examples") {
  const LocalFactorization split = local_factor_pairing(kGolden, 11);
  REQUIRE(split.factors.size() == 2);
  CHECK(split.factors[0].tag == FactorTag::paired);
  CHECK(split.factors[0].partner == 1);
  CHECK(split.factors[1].partner == 0);
  CHECK(split.hyperbolic() == true);

  const LocalFactorization inert = local_factor_pairing(kGolden, 3);
  REQUIRE(inert.factors.size() == 1);
  CHECK(inert.factors[0].tag == FactorTag::symmetric);
  CHECK(inert.factors[0].degree == 2);
  CHECK(inert.hyperbolic() == false);
}

TEST_CASE("cyclotomic factor at its ramified prime") {
  const LocalFactorization lf = local_factor_pairing(kPhi10, 5);
  REQUIRE(lf.factors.size() == 1);
  CHECK(lf.factors[0].degree == 4);
  CHECK(lf.factors[0].tag == FactorTag::symmetric);
  CHECK(lf.hyperbolic() == false);
  CHECK(lf.status == PairingStatus::proved);
}

TEST_CASE("quadratic pairing matches the discriminant square test") {
  // X^2 - sX + 1 splits over Q_p exactly when s^2 - 4 is a p-adic square.
  for (long s = -12; s <= 12; ++s) {
    if (s == 2 || s == -2 || s == 0 || s == 1 || s == -1) continue;
    const Poly f{1, -s, 1};
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
      CAPTURE(s);
      CAPTURE(p);
      const LocalFactorization lf = local_factor_pairing(f, p);
      REQUIRE(lf.hyperbolic().has_value());
      CHECK(*lf.hyperbolic() == is_local_square(Rat(s * s - 4), Place::finite(p)));
    }
  }
}

TEST_CASE("quartic pairing matches reduction at unramified primes") {
  const std::vector<Poly> quartics{kPhi10, kSalem4, Poly{1, -1, -1, -1, 1}, Poly{1, 2, -1, 2, 1},
                                   Poly{1, 0, -3, 0, 1}, Poly{1, 1, -3, 1, 1}};
  for (const Poly& f : quartics) {
    const Rat disc = discriminant(f);
    for (long p = 3; p < 60; p += 2) {
      if (!is_prime(Int(p)) || valuation(disc, Int(p)) != 0) continue;
      CAPTURE(f.to_string());
      CAPTURE(p);
      const LocalFactorization lf = local_factor_pairing(f, p);
      REQUIRE(lf.hyperbolic().has_value());
      CHECK(*lf.hyperbolic() == hyperbolic_by_reduction(f, p));
      int degree = 0;
      for (auto& fac : lf.factors) degree += fac.degree;
      CHECK(degree == 4);
    }
  }
}

TEST_CASE("salem quartic at a ramified prime is settled") {
  // disc(X^4 - 3X^3 + 3X^2 - 3X + 1) has a factor 5; the trace route decides it.
  const LocalFactorization lf = local_factor_pairing(kSalem4, 5);
  CHECK(lf.hyperbolic().has_value());
}

TEST_CASE("paired factors are stars of each other") {
  for (long p : {11L, 19L, 29L, 31L}) {
    const LocalFactorization lf = local_factor_pairing(kGolden, p);
    for (std::size_t i = 0; i < lf.factors.size(); ++i) {
      const LocalFactor& fac = lf.factors[i];
      if (fac.tag != FactorTag::paired || fac.coeffs.empty()) continue;
      const Int pk = [&] {
        Int m = 1;
        for (int k = 0; k < lf.precision; ++k) m *= p;
        return m;
      }();
      CHECK(modp::star(modp::reduce(fac.coeffs, pk), pk) ==
            modp::reduce(lf.factors[static_cast<std::size_t>(fac.partner)].coeffs, pk));
    }
  }
}

TEST_CASE("local certificates") {
  LocalFactorization cert;
  cert.p = 11;
  cert.precision = 1;
  cert.status = PairingStatus::undecided;
  cert.factors = {linear_factor(9, 11, FactorTag::paired, 1), linear_factor(5, 11, FactorTag::paired, 0)};
  LocalFactorization good = cert;
  const CertificateCheck ok = verify_local_certificate(kGolden, good);
  CHECK(ok.accepted);
  CHECK(good.status == PairingStatus::certified);

  LocalFactorization tampered = cert;
  tampered.factors[1] = linear_factor(6, 11, FactorTag::paired, 0);
  const CertificateCheck bad = verify_local_certificate(kGolden, tampered);
  CHECK_FALSE(bad.accepted);
  CHECK(bad.reason == "product mismatch");

  // X^2 - 3X + 1 = (X + 1)^2 mod 5: the factors are not separated.
  LocalFactorization coarse;
  coarse.p = 5;
  coarse.precision = 1;
  coarse.factors = {linear_factor(-1, 5, FactorTag::type0, -1), linear_factor(-1, 5, FactorTag::type0, -1)};
  const CertificateCheck imprecise = verify_local_certificate(kGolden, coarse);
  CHECK_FALSE(imprecise.accepted);
  CHECK(imprecise.reason == "insufficient precision");

  LocalFactorization unpaired = cert;
  unpaired.factors[1].partner = -1;
  CHECK_FALSE(verify_local_certificate(kGolden, unpaired).accepted);
}

TEST_CASE("computed factorizations certify themselves") {
  for (long p : {3L, 7L, 11L, 19L}) {
    LocalFactorization lf = local_factor_pairing(kGolden, p);
    CAPTURE(p);
    CHECK(verify_local_certificate(kGolden, lf).accepted);
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(local_factor_pairing(Poly{-2, 0, 1}, 3), InputError);
  CHECK_THROWS_AS(local_factor_pairing(kGolden, 9), InputError);
}
