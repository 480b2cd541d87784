// isoq: command-line front end. stdout carries result JSON, stderr diagnostics.
// Exit codes: 0 completed run, 2 input error; `decide --exit-verdict` maps
// YES/NO/UNDECIDED to 0/1/3 and `verify` exits 1 on a rejected certificate.

#include "isoq/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace isoq;
using json_io::json;

namespace {

constexpr int kInputError = 2;

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Matrix gram_of(const json& j) { return json_io::to_matrix(j.is_object() ? j.at("gram") : j); }

int exit_code_for(Answer a) {
  switch (a) {
    case Answer::yes: return 0;
    case Answer::no: return 1;
    case Answer::undecided: return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometries of rational quadratic spaces with prescribed module"};
  app.require_subcommand(1);

  std::string decide_file, place;
  long prime_bound = 10000;
  bool exit_verdict = false, no_certificate = false;
  auto* decide = app.add_subcommand("decide", "Decide whether the form admits an isometry with the module");
  decide->add_option("request", decide_file, "JSON with \"gram\" and \"module\" ('-' for stdin)")->required();
  decide->add_option("--place", place, "\"inf\" or a prime; omit for the global question");
  decide->add_option("--prime-bound", prime_bound, "Prime bound for the edge search")->check(CLI::PositiveNumber);
  decide->add_flag("--exit-verdict", exit_verdict, "Exit 0/1/3 for YES/NO/UNDECIDED");
  decide->add_flag("--no-certificate", no_certificate, "Skip the certificate search on YES");

  std::string construct_file, det_text;
  auto* construct_cmd = app.add_subcommand("construct", "Build a certificate for a module");
  construct_cmd->add_option("module", construct_file, "Module JSON")->required();
  construct_cmd->add_option("--det", det_text, "Target determinant (rational)");

  std::string verify_file;
  auto* verify_cmd = app.add_subcommand("verify", "Check an isometry certificate or a local factorization certificate");
  verify_cmd->add_option("certificate", verify_file, "Certificate JSON")->required();

  std::string invariants_file;
  auto* invariants_cmd = app.add_subcommand("invariants", "Invariants of a Gram matrix");
  invariants_cmd->add_option("gram", invariants_file, "Gram JSON (matrix or {\"gram\": ...})")->required();

  long ff_q = 3;
  int ff_dim = 2;
  bool slow = false, serial = false;
  auto* oracle_cmd = app.add_subcommand("oracle-ff", "Exhaustive finite-field cross-check");
  oracle_cmd->add_option("--q", ff_q, "Odd prime")->required();
  oracle_cmd->add_option("--dim", ff_dim, "Dimension (<= 3, or 4 with --slow)")->required();
  oracle_cmd->add_flag("--slow", slow, "Allow dimension 4");
  oracle_cmd->add_flag("--serial", serial, "Use the serial enumeration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*decide) {
      const json req = read_json(decide_file);
      const Matrix gram = gram_of(req);
      const ModuleSpec spec = json_io::to_module(req.at("module"));
      require_gram(gram);
      validate(spec);
      if (gram.rows() != spec.dim()) throw InputError("dimension mismatch between form and module");
      if (place.empty() && req.contains("place")) place = req.at("place").get<std::string>();
      if (req.contains("prime_bound") && !decide->count("--prime-bound")) prime_bound = req.at("prime_bound").get<long>();
      if (!place.empty()) {
        const Place v = Place::parse(place);
        const LocalVerdict lv = v.is_real() ? decide_real(invariants(gram).signature, spec)
                                            : decide_padic(gram, spec, v.prime());
        std::cout << json_io::dump(json_io::from_local_verdict(lv));
        return exit_verdict ? exit_code_for(lv.answer) : 0;
      }
      DecideOptions opt;
      opt.prime_bound = prime_bound;
      opt.certificate = !no_certificate;
      const Verdict v = decide_global(gram, spec, opt);
      std::cout << json_io::dump(json_io::from_verdict(v));
      return exit_verdict ? exit_code_for(v.answer) : 0;
    }
    if (*construct_cmd) {
      const ModuleSpec spec = json_io::to_module(read_json(construct_file));
      const IsometryCertificate cert =
          det_text.empty() ? construct(spec) : construct_with_det(spec, parse_rational(det_text));
      std::cout << json_io::dump(json_io::from_certificate(cert));
      return 0;
    }
    if (*verify_cmd) {
      const json j = read_json(verify_file);
      if (j.is_object() && j.contains("factors")) {
        LocalFactorization lf = json_io::to_local_factorization(j);
        const CertificateCheck check = verify_local_certificate(json_io::to_poly(j.at("poly")), lf);
        std::cout << json_io::dump({{"ok", check.accepted}, {"reason", check.reason}});
        return check.accepted ? 0 : 1;
      }
      const VerifyResult r = verify(json_io::to_certificate(j));
      std::cout << json_io::dump({{"ok", r.ok}, {"reason", r.reason}});
      return r.ok ? 0 : 1;
    }
    if (*invariants_cmd) {
      std::cout << json_io::dump(json_io::from_invariants(invariants(gram_of(read_json(invariants_file)))));
      return 0;
    }
    if (*oracle_cmd) {
      if (ff_dim > 3 && !slow) throw InputError("dimension 4 requires --slow");
      const auto report = ff::oracle(ff_q, ff_dim, !serial);
      std::cout << json_io::dump(json_io::from_oracle_report(report));
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "isoq: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "isoq: malformed request: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "isoq: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
