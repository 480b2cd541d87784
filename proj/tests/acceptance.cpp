// Acceptance driver: `acceptance --criterion N [--slow]` runs one criterion and
// prints a single PASS/FAIL line; the exit status is 0 exactly on PASS.

#include "isoq/finite_field.hpp"
#include "isoq/globdec.hpp"
#include "isoq/transfer.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace isoq;

namespace {

const Poly kGolden{1, -3, 1};
const Poly kCircle{1, 0, 1};
const Poly kPhi10{1, -1, 1, -1, 1};
const Poly kSalem4{1, -3, 3, -3, 1};
const Poly kMinus{-1, 1};
const Poly kPlus{1, 1};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::string places_to_string(const std::set<Place>& s) {
  std::string out = "{";
  for (auto& v : s) out += (out.size() > 1 ? "," : "") + v.to_string();
  return out + "}";
}

GlobalInvariants diag(std::initializer_list<long> d) {
  std::vector<Rat> v;
  for (long x : d) v.emplace_back(x);
  return GlobalInvariants::of_diagonal(v);
}

// Random invertible matrix with entries in {-1, 0, 1}; wider entries inflate the
// minors past what Pollard-Brent factors quickly.
Matrix random_congruence(Rng& rng, int n) {
  for (;;) {
    Matrix p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = uniform(rng, -1, 1);
    if (p.det() != 0) return p;
  }
}

Matrix congruent(const Matrix& g, const Matrix& p) { return p.transpose() * g * p; }

GlobalInvariants random_diagonal(Rng& rng, int n) {
  static const long pool[] = {1, 2, 3, 5, 6, 7, -1, -2, -3, -5, -6, -7};
  std::vector<Rat> d;
  for (int i = 0; i < n; ++i) d.emplace_back(pool[uniform(rng, 0, 11)]);
  return GlobalInvariants::of_diagonal(d);
}

Poly random_fixed(Rng& rng, const Poly& f) {
  for (;;) {
    std::vector<Rat> b;
    for (int i = 0; i < f.degree() / 2; ++i) b.emplace_back(uniform(rng, -4, 4));
    const Poly alpha = fixed_element(Poly(b), f);
    if (!alpha.is_zero()) return alpha;
  }
}

Outcome hilbert_reciprocity() {
  Rng rng(1);
  const long bound = 1000000;
  auto draw = [&] {
    long num = 0;
    while (num == 0) num = uniform(rng, -bound, bound);
    return Rat(num, uniform(rng, 1, bound));
  };
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rat a = draw(), b = draw();
    a.canonicalize();
    b.canonicalize();
    std::set<Place> places{Place::real(), Place::finite(2)};
    for (auto& p : prime_support(a)) places.insert(Place::finite(p));
    for (auto& p : prime_support(b)) places.insert(Place::finite(p));
    int product = 1;
    for (auto& v : places) product *= static_cast<int>(hilbert(a, b, v));
    if (product != 1) ++failures;
  }
  return {failures == 0, "1000 pairs, " + std::to_string(failures) + " violations"};
}

Outcome diagonalization_invariance() {
  Rng rng(2);
  int checked = 0, failures = 0;
  while (checked < 200) {
    const int n = static_cast<int>(uniform(rng, 1, 6));
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Rat x(uniform(rng, -50, 50), uniform(rng, 1, 50));
        x.canonicalize();
        g(i, j) = g(j, i) = x;
      }
    if (g.det() == 0) continue;
    ++checked;
    const GlobalInvariants base = invariants(g);
    for (int k = 0; k < 5; ++k)
      if (!(invariants(congruent(g, random_congruence(rng, n))) == base)) ++failures;
  }
  return {failures == 0, "200 matrices x 5 congruences, " + std::to_string(failures) + " differences"};
}

Outcome finite_field_oracle(bool slow, double& grid_seconds) {
  std::vector<std::pair<long, int>> grid;
  for (long q : {3L, 5L})
    for (int dim = 1; dim <= 3; ++dim) grid.emplace_back(q, dim);
  std::ostringstream detail;
  std::size_t mismatches = 0, pairs = 0;
  const auto start = std::chrono::steady_clock::now();
  for (auto [q, dim] : grid) {
    const ff::OracleReport r = ff::oracle(q, dim);
    mismatches += r.mismatches.size();
    pairs += r.pairs.size();
  }
  grid_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (slow) {
    const ff::OracleReport r = ff::oracle(3, 4);
    mismatches += r.mismatches.size();
    pairs += r.pairs.size();
  }
  detail << pairs << " (form, module) pairs" << (slow ? " incl. F_3 dim 4" : "") << ", " << mismatches
         << " mismatches, default grid " << grid_seconds << " s";
  return {mismatches == 0 && pairs > 0 && grid_seconds <= 60, detail.str()};
}

Outcome transfer_round_trip() {
  Rng rng(4);
  DecideOptions opt;
  opt.certificate = false;
  int cases = 0, failures = 0;
  for (const Poly& f : {kCircle, kGolden, kPhi10, kSalem4})
    for (unsigned m = 1; m <= 2; ++m)
      for (int trial = 0; trial < 10; ++trial) {
        ++cases;
        HermitianSpec spec{f, {}};
        for (unsigned i = 0; i < m; ++i) spec.alphas.push_back(random_fixed(rng, f));
        const IsometryCertificate cert = transfer_gram(spec);
        const Poly big_f = f.pow(m);
        const bool det_ok = SquareClass(cert.gram.det()) == SquareClass(big_f.eval(1) * big_f.eval(-1));
        const ModuleSpec module({{f, 1, static_cast<int>(m)}});
        const bool yes = decide_global(cert.gram, module, opt).answer == Answer::yes;
        if (!verify(cert).ok || !det_ok || !yes || !(cert.module == module)) ++failures;
      }
  return {failures == 0, std::to_string(cases) + " transfers, " + std::to_string(failures) + " failures"};
}

Outcome worked_examples() {
  const ModuleSpec golden({{kGolden, 1, 1}});
  const ModuleSpec phi({{kPhi10, 1, 1}});
  struct Case {
    std::string name;
    bool ok;
  };
  auto global = [](const GlobalInvariants& q, const ModuleSpec& m, Answer a, GlobalReason r) {
    const Verdict v = decide_global(q, m);
    return v.answer == a && (a == Answer::yes || v.reason == r);
  };
  const std::vector<Case> cases{
      {"<1,-5> golden YES", global(diag({1, -5}), golden, Answer::yes, GlobalReason::none)},
      {"<1,5> golden NO(DET)", global(diag({1, 5}), golden, Answer::no, GlobalReason::det)},
      {"<1,1,1,5> Phi10 YES", global(diag({1, 1, 1, 5}), phi, Answer::yes, GlobalReason::none)},
      {"<1,1,1,1> Phi10 NO(DET)", global(diag({1, 1, 1, 1}), phi, Answer::no, GlobalReason::det)},
      {"real (2,0) golden NO", decide_real(Signature{2, 0}, golden).answer == Answer::no},
      {"<1,1> golden at 11 NO", decide_padic(diag({1, 1}), golden, 11).answer == Answer::no},
  };
  std::string failed;
  for (auto& c : cases)
    if (!c.ok) failed += " [" + c.name + "]";
  return {failed.empty(), "6 examples" + (failed.empty() ? std::string() : ", failed:" + failed)};
}

ModuleSpec random_module(Rng& rng) {
  static const std::vector<std::vector<ModuleComponent>> pool{
      {{kGolden, 1, 1}},  {{kCircle, 1, 1}}, {{kPhi10, 1, 1}},   {{kSalem4, 1, 1}},
      {{kGolden, 1, 2}},  {{kGolden, 2, 1}}, {{kMinus, 1, 1}},   {{kPlus, 1, 2}},
      {{kMinus, 2, 2}},   {{kMinus, 3, 1}},  {{Poly{-2, 1}, 1, 1}, {Poly(std::vector<Rat>{Rat(-1, 2), 1}), 1, 1}},
      {{Poly{1, -5, 1}, 1, 1}},
  };
  std::vector<ModuleComponent> parts;
  int dim = 0;
  const int count = static_cast<int>(uniform(rng, 1, 3));
  for (int i = 0; i < count; ++i) {
    const auto& pick = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
    int add = 0;
    for (auto& c : pick) add += c.f.degree() * c.e * c.n;
    if (dim + add > 8) continue;
    dim += add;
    parts.insert(parts.end(), pick.begin(), pick.end());
  }
  if (parts.empty()) parts.push_back({kGolden, 1, 1});
  return ModuleSpec(parts);
}

Outcome local_global_fuzz(double& seconds) {
  Rng rng(6);
  DecideOptions opt;
  opt.certificate = false;
  int instances = 0, yes = 0, violations = 0, realized_rejected = 0;
  std::string first_violation;
  const auto start = std::chrono::steady_clock::now();
  while (instances < 100) {
    const ModuleSpec module = random_module(rng);
    IsometryCertificate cert;
    try {
      cert = construct(module);
    } catch (const InputError&) {
      continue;
    }
    ++instances;
    const bool perturbed = instances % 2 == 0;
    GlobalInvariants form = invariants(congruent(cert.gram, random_congruence(rng, module.dim())));
    if (perturbed) {
      std::vector<Rat> d = diagonalize(cert.gram);
      static const long scales[] = {-1, 2, 3, -3, 5, -5, 7};
      d[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d.size()) - 1))] *= scales[uniform(rng, 0, 6)];
      form = GlobalInvariants::of_diagonal(d);
    }
    const Verdict v = decide_global(form, module, opt);
    if (!perturbed && v.answer == Answer::no) ++realized_rejected;
    if (v.answer != Answer::yes) continue;
    ++yes;
    std::set<Place> places = compute_support(form, module).Sigma;
    places.insert(Place::real());
    for (long p = 2; p <= 50; ++p)
      if (is_prime(Int(p))) places.insert(Place::finite(p));
    for (auto& place : places) {
      const LocalVerdict local = place.is_real() ? decide_real(form.signature, module)
                                                 : decide_padic(form, module, place.prime());
      if (local.answer != Answer::yes) {
        ++violations;
        if (first_violation.empty()) first_violation = " first at " + place.to_string();
      }
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << instances << " instances, " << yes << " global YES, " << violations << " local violations"
         << first_violation << ", " << realized_rejected << " realized forms rejected, " << seconds << " s";
  return {violations == 0 && realized_rejected == 0 && seconds < 120, detail.str()};
}

// Modules whose odd semisimplification vanishes. Odd-multiplicity even-size
// Jordan blocks at +-1 are left out: no isometry has them.
Outcome hyperbolic_law() {
  Rng rng(7);
  const std::vector<ModuleComponent> pool{
      {Poly{-2, 1}, 1, 1}, {Poly{-3, 1}, 2, 1}, {Poly{2, 1}, 1, 2}, {kGolden, 2, 1},
      {kCircle, 2, 1},     {kMinus, 2, 2},      {kPlus, 2, 2},       {kPhi10, 2, 1},
  };
  int modules = 0, forms = 0, failures = 0;
  std::string first_failure;
  while (modules < 20) {
    std::vector<ModuleComponent> parts;
    int dim = 0;
    for (int i = 0, count = static_cast<int>(uniform(rng, 1, 2)); i < count; ++i) {
      ModuleComponent c = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
      const bool type2 = !(star(c.f) == c.f);
      const int add = c.f.degree() * c.e * c.n * (type2 ? 2 : 1);
      if (dim + add > 8) continue;
      dim += add;
      parts.push_back(c);
      if (type2) parts.push_back({star(c.f), c.e, c.n});
    }
    if (parts.empty()) continue;
    const ModuleSpec module(parts);
    if (!is_hyperbolic_module(module) || !type0_blocks_paired(module)) continue;
    ++modules;
    const int planes = module.dim() / 2;
    const GlobalInvariants h = GlobalInvariants::hyperbolic(planes);
    std::vector<GlobalInvariants> candidates{h};
    // <a,-a> sums are hyperbolic; random diagonals mostly are not.
    std::vector<Rat> split;
    for (int i = 0; i < planes; ++i) {
      const long a = uniform(rng, 1, 9);
      split.emplace_back(a);
      split.emplace_back(-a);
    }
    candidates.push_back(GlobalInvariants::of_diagonal(split));
    for (int i = 0; i < 4; ++i) candidates.push_back(random_diagonal(rng, module.dim()));
    for (auto& q : candidates) {
      ++forms;
      const bool expected = equivalent(q, h, std::nullopt);
      const Answer got = decide_global(q, module).answer;
      if (got != (expected ? Answer::yes : Answer::no)) {
        ++failures;
        if (first_failure.empty()) first_failure = ", first failure at dim " + std::to_string(module.dim());
      }
    }
  }
  return {failures == 0, std::to_string(modules) + " modules, " + std::to_string(forms) + " forms, " +
                             std::to_string(failures) + " disagreements" + first_failure};
}

Outcome parity_bookkeeping() {
  Rng rng(8);
  const std::vector<ModuleSpec> modules{
      ModuleSpec({{kGolden, 1, 1}, {kCircle, 1, 1}}),
      ModuleSpec({{kGolden, 1, 1}, {kPhi10, 1, 1}}),
      ModuleSpec({{Poly{1, -5, 1}, 1, 1}, {Poly{1, -6, 1}, 1, 1}}),
      ModuleSpec({{kGolden, 1, 2}, {kCircle, 1, 1}}),
      ModuleSpec({{kCircle, 1, 1}, {Poly{1, 1, 1}, 1, 1}, {kGolden, 1, 1}}),
      ModuleSpec({{kSalem4, 1, 1}, {kCircle, 1, 1}}),
  };
  const long before = parity_assertion_count();
  int runs = 0;
  std::string error;
  for (auto& module : modules)
    for (int i = 0; i < 10; ++i) {
      try {
        decide_type1(random_diagonal(rng, module.dim()), module);
        ++runs;
      } catch (const std::logic_error& e) {
        if (error.empty()) error = std::string(", ") + e.what();
      }
    }
  const long checks = parity_assertion_count() - before;
  return {checks > 0 && error.empty(),
          std::to_string(runs) + " decide_type1 runs, " + std::to_string(checks) + " parity checks" + error};
}

Outcome twist_locality() {
  bool pass = true;
  std::string detail;
  const std::vector<std::pair<Poly, long>> cases{{kGolden, 3}, {kCircle, 2}};
  for (auto& [f, p] : cases) {
    const HermitianSpec base{f, {Poly{1}}};
    const TwistResult result = twist(base, p);
    const GlobalInvariants before = invariants(transfer_gram(base).gram);
    const GlobalInvariants after = invariants(transfer_gram(result.spec).gram);
    std::set<Place> diff;
    for (auto& v : before.hasse_support)
      if (!after.hasse_support.count(v)) diff.insert(v);
    for (auto& v : after.hasse_support)
      if (!before.hasse_support.count(v)) diff.insert(v);
    const bool ok = before.dim == after.dim && before.det == after.det && diff == std::set<Place>{Place::finite(p)};
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + " Hasse differs at " +
              places_to_string(diff);
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  bool slow = false;
  app.add_option("--criterion", criterion, "criterion number")->required()->check(CLI::Range(1, 9));
  app.add_flag("--slow", slow, "include the F_3 dimension-4 oracle grid");
  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  double limit = 0;  // seconds, 0 when untimed
  double measured = -1;
  Outcome out;
  try {
    switch (criterion) {
      case 1: out = hilbert_reciprocity(), limit = 5; break;
      case 2: out = diagonalization_invariance(); break;
      case 3: out = finite_field_oracle(slow, measured); break;
      case 4: out = transfer_round_trip(), limit = 30; break;
      case 5: out = worked_examples(); break;
      case 6: out = local_global_fuzz(measured); break;
      case 7: out = hyperbolic_law(); break;
      case 8: out = parity_bookkeeping(); break;
      case 9: out = twist_locality(); break;
    }
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && elapsed >= limit) {
    out.pass = false;
    out.detail += ", over the " + std::to_string(static_cast<int>(limit)) + " s limit";
  }
  std::cout << "criterion " << criterion << ": " << (out.pass ? "PASS" : "FAIL") << " (" << out.detail << "; "
            << elapsed << " s)" << std::endl;
  return out.pass ? 0 : 1;
}
