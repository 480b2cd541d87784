#include "isoq/json_io.hpp"

namespace isoq::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int to_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::string tag_name(FactorTag t) {
  switch (t) {
    case FactorTag::symmetric: return "SYMMETRIC";
    case FactorTag::paired: return "PAIRED";
    case FactorTag::type0: return "TYPE0";
  }
  return "?";
}

std::string status_name(PairingStatus s) {
  switch (s) {
    case PairingStatus::proved: return "PROVED";
    case PairingStatus::certified: return "CERTIFIED";
    case PairingStatus::undecided: return "UNDECIDED";
  }
  return "?";
}

}  // namespace

json from_rational(const Rat& a) { return format_rational(a); }

Rat to_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw InputError("rational must be a string \"n\" or \"n/d\"");
}

json from_poly(const Poly& f) {
  json out = json::array();
  for (auto& c : f.coeffs()) out.push_back(from_rational(c));
  return out;
}

Poly to_poly(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("polynomial must be a nonempty coefficient array");
  std::vector<Rat> c;
  for (auto& x : j) c.push_back(to_rational(x));
  return Poly(c);
}

json from_matrix(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(from_rational(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Matrix to_matrix(const json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  std::vector<std::vector<Rat>> rows;
  for (auto& row : j) {
    if (!row.is_array()) throw InputError("matrix row must be an array");
    std::vector<Rat> r;
    for (auto& x : row) r.push_back(to_rational(x));
    rows.push_back(std::move(r));
  }
  return Matrix::from_rows(rows);
}

json from_module(const ModuleSpec& m) {
  json comps = json::array();
  for (auto& c : m.components()) comps.push_back({{"e", c.e}, {"n", c.n}, {"poly", from_poly(c.f)}});
  return {{"components", comps}};
}

ModuleSpec to_module(const json& j) {
  if (j.is_object() && j.contains("module") && !j.contains("components")) return to_module(j.at("module"));
  const json& comps = field(j, "components");
  if (!comps.is_array()) throw InputError("components must be an array");
  std::vector<ModuleComponent> out;
  for (auto& c : comps) {
    ModuleComponent mc;
    mc.f = to_poly(field(c, "poly"));
    mc.e = c.contains("e") ? to_int(c.at("e"), "e") : 1;
    mc.n = c.contains("n") ? to_int(c.at("n"), "n") : 1;
    out.push_back(std::move(mc));
  }
  return ModuleSpec(std::move(out));
}

json from_certificate(const IsometryCertificate& c) {
  return {{"gram", from_matrix(c.gram)}, {"module", from_module(c.module)}, {"t", from_matrix(c.t)}};
}

IsometryCertificate to_certificate(const json& j) {
  const json& body = (j.is_object() && j.contains("certificate")) ? j.at("certificate") : j;
  return {to_matrix(field(body, "gram")), to_matrix(field(body, "t")), to_module(field(body, "module"))};
}

json from_invariants(const GlobalInvariants& inv) {
  json places = json::array();
  for (auto& v : inv.hasse_support) places.push_back(v.to_string());
  return {{"det", inv.det.to_string()},
          {"dim", inv.dim},
          {"disc", inv.disc().to_string()},
          {"hasse_support", places},
          {"signature", {inv.signature.pos, inv.signature.neg}}};
}

json from_verdict(const Verdict& v) {
  json out = {{"answer", to_string(v.answer)}, {"reason", to_string(v.reason)}};
  if (v.place) out["place"] = v.place->to_string();
  if (v.certificate) out["certificate"] = from_certificate(*v.certificate);
  if (v.search_bound) out["search_bound"] = *v.search_bound;
  return out;
}

json from_local_verdict(const LocalVerdict& v) {
  return {{"answer", to_string(v.answer)}, {"place", v.place}, {"reason", to_string(v.reason)}};
}

json from_local_factorization(const LocalFactorization& lf) {
  json factors = json::array();
  for (auto& f : lf.factors) {
    json coeffs = json::array();
    for (auto& c : f.coeffs) coeffs.push_back(c.get_str());
    json entry = {{"coeffs", coeffs}, {"degree", f.degree}, {"tag", tag_name(f.tag)}};
    entry["partner"] = f.partner >= 0 ? json(f.partner) : json(nullptr);
    if (f.unresolved) entry["unresolved"] = true;
    factors.push_back(entry);
  }
  return {{"factors", factors}, {"k", lf.precision}, {"p", lf.p.get_str()}, {"status", status_name(lf.status)}};
}

LocalFactorization to_local_factorization(const json& j) {
  LocalFactorization lf;
  const json& p = field(j, "p");
  lf.p = p.is_string() ? Int(p.get<std::string>()) : Int(p.get<long>());
  if (!is_prime(lf.p)) throw InputError("certificate prime is not prime");
  lf.precision = to_int(field(j, "k"), "k");
  lf.status = PairingStatus::undecided;
  for (auto& f : field(j, "factors")) {
    LocalFactor lfac;
    for (auto& c : field(f, "coeffs")) lfac.coeffs.push_back(c.is_string() ? Int(c.get<std::string>()) : Int(c.get<long>()));
    lfac.degree = static_cast<int>(lfac.coeffs.size()) - 1;
    const std::string tag = field(f, "tag").get<std::string>();
    if (tag == "SYMMETRIC") lfac.tag = FactorTag::symmetric;
    else if (tag == "PAIRED") lfac.tag = FactorTag::paired;
    else if (tag == "TYPE0") lfac.tag = FactorTag::type0;
    else throw InputError("unknown factor tag " + tag);
    lfac.partner = f.contains("partner") && !f.at("partner").is_null() ? to_int(f.at("partner"), "partner") : -1;
    lf.factors.push_back(std::move(lfac));
  }
  return lf;
}

json from_oracle_report(const ff::OracleReport& r) {
  auto pair_json = [](const ff::OraclePair& p) {
    json form = json::array();
    for (long x : p.form) form.push_back(x);
    return json{{"decided", p.decided}, {"form", form}, {"module", p.module.to_string()}, {"realized", p.realized}};
  };
  json pairs = json::array(), mismatches = json::array();
  for (auto& p : r.pairs) pairs.push_back(pair_json(p));
  for (auto& p : r.mismatches) mismatches.push_back(pair_json(p));
  return {{"dim", r.dim},
          {"forms_enumerated", r.forms_enumerated},
          {"isometries_enumerated", r.isometries_enumerated},
          {"mismatches", mismatches},
          {"pairs", pairs},
          {"q", r.q}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace isoq::json_io
