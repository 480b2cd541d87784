#pragma once
// Factorization of symmetric polynomials over Q_p with star-pairing of the
// factors, and checking of externally supplied local factorizations.

#include "isoq/polymod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isoq {

enum class FactorTag { symmetric, paired, type0 };
enum class PairingStatus { proved, certified, undecided };

struct LocalFactor {
  /// Monic approximation modulo p^precision; empty when only the degree and
  /// tag are known (factors separated by Newton polygon slopes).
  modp::ZPoly coeffs;
  int degree = 0;
  FactorTag tag = FactorTag::symmetric;
  /// Partner index for paired factors, -1 otherwise.
  int partner = -1;
  /// False when the entry is a Hensel block that may still split over Q_p.
  bool irreducible = true;
  /// Set when this entry could not be analysed further.
  bool unresolved = false;
};

struct LocalFactorization {
  Int p;
  int precision = 1;
  std::vector<LocalFactor> factors;
  PairingStatus status = PairingStatus::proved;

  bool has_symmetric() const;
  /// True/false when settled; nullopt when unresolved entries could hide a
  /// symmetric factor.
  std::optional<bool> hyperbolic() const;
};

/// Local factorization of an irreducible symmetric polynomial at p.
LocalFactorization local_factor_pairing(const Poly& f, const Int& p);

struct CertificateCheck {
  bool accepted = false;
  std::string reason;
};

/// Checks product, pairwise separation at the stated precision and the star
/// pairing of claimed factors. On success the factorization is marked certified.
CertificateCheck verify_local_certificate(const Poly& f, LocalFactorization& cert);

}  // namespace isoq
