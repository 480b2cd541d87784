#pragma once
// JSON encodings of every public value. Rationals travel as "n" or "n/d"
// strings, places as "inf" or the decimal prime; objects use sorted keys so
// equal values serialize to identical bytes.

#include "isoq/globdec.hpp"

#include "json.hpp"

#include <string>

namespace isoq::json_io {

using nlohmann::json;

json from_rational(const Rat& a);
Rat to_rational(const json& j);

json from_poly(const Poly& f);
Poly to_poly(const json& j);

json from_matrix(const Matrix& m);
Matrix to_matrix(const json& j);

json from_module(const ModuleSpec& m);
/// Accepts {"components": [...]} or a wrapper {"module": {...}}.
ModuleSpec to_module(const json& j);

json from_certificate(const IsometryCertificate& c);
IsometryCertificate to_certificate(const json& j);

json from_invariants(const GlobalInvariants& inv);
json from_verdict(const Verdict& v);
json from_local_verdict(const LocalVerdict& v);

json from_local_factorization(const LocalFactorization& lf);
LocalFactorization to_local_factorization(const json& j);

json from_oracle_report(const ff::OracleReport& r);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace isoq::json_io
