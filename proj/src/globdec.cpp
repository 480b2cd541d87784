#include "isoq/globdec.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace isoq {

std::string to_string(GlobalReason r) {
  switch (r) {
    case GlobalReason::none: return "NONE";
    case GlobalReason::det: return "DET";
    case GlobalReason::signature: return "SIGNATURE";
    case GlobalReason::hyperbolicity: return "HYPERBOLICITY";
    case GlobalReason::local_fail: return "LOCAL_FAIL";
    case GlobalReason::witt: return "WITT";
    case GlobalReason::parity_disconnected_up_to_bound: return "PARITY_DISCONNECTED_UP_TO_BOUND";
    case GlobalReason::pairing_unresolved: return "PAIRING_UNRESOLVED";
    case GlobalReason::type0_parity: return "TYPE0_PARITY";
  }
  return "?";
}

namespace {

std::atomic<long> parity_checks{0};

void parity_assert(bool holds, const char* what) {
  ++parity_checks;
  if (!holds) throw std::logic_error(std::string("parity bookkeeping violated: ") + what);
}

Verdict verdict(Answer a, GlobalReason r, std::optional<Place> place = std::nullopt) {
  Verdict v;
  v.answer = a;
  v.reason = r;
  v.place = std::move(place);
  return v;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<char> composite(static_cast<std::size_t>(bound) + 1, 0);
  for (long i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = 1;
  }
  return out;
}

bool both_nonhyperbolic(const Poly& fi, const Poly& fj, long p) {
  try {
    const Place v = Place::finite(p);
    const auto hi = locally_hyperbolic(fi, v);
    if (!hi || *hi) return false;
    const auto hj = locally_hyperbolic(fj, v);
    return hj && !*hj;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

long parity_assertion_count() { return parity_checks.load(); }

std::optional<Int> find_pair_place_serial(const Poly& fi, const Poly& fj, long bound) {
  for (long p : primes_up_to(bound))
    if (both_nonhyperbolic(fi, fj, p)) return Int(p);
  return std::nullopt;
}

std::optional<Int> find_pair_place(const Poly& fi, const Poly& fj, long bound) {
  const auto primes = primes_up_to(bound);
  constexpr long chunk = 128;
  const long total = static_cast<long>(primes.size());
  // Chunks keep the early exit; the min-reduction keeps the smallest witness.
  for (long start = 0; start < total; start += chunk) {
    const long end = std::min(total, start + chunk);
    long best = LONG_MAX;
#pragma omp parallel for reduction(min : best) schedule(dynamic, 4)
    for (long k = start; k < end; ++k) {
      const long p = primes[static_cast<std::size_t>(k)];
      if (both_nonhyperbolic(fi, fj, p)) best = std::min(best, p);
    }
    if (best != LONG_MAX) return Int(best);
  }
  return std::nullopt;
}

namespace {

struct Column {
  Poly f;
  int n = 1;
  int dim = 0;
  Rat d;
  int sigma = 0;  // half the off-circle root count of f^n
};

std::vector<Column> columns_of(const std::vector<ModuleComponent>& comps) {
  std::vector<Column> cols;
  for (auto& c : comps) {
    Column col;
    col.f = c.f;
    col.n = c.n;
    col.dim = c.f.degree() * c.n;
    col.d = component_det(c);
    col.sigma = unit_circle_root_count(c.f).off * c.n / 2;
    cols.push_back(col);
  }
  return cols;
}

Symbol pairwise_symbol(const std::vector<Rat>& ds, const Place& v) {
  Symbol s = Symbol::plus;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) s *= hilbert(ds[i], ds[j], v);
  return s;
}

std::set<Place> candidate_places(const GlobalInvariants& form, const std::vector<Rat>& ds) {
  std::set<Place> places = form.support();
  for (auto& d : ds)
    for (auto& p : prime_support(d)) places.insert(Place::finite(p));
  return places;
}

Symbol hyperbolic_hasse(int dim, const Place& v) { return GlobalInvariants::hyperbolic(dim / 2).hasse(v); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

struct Edge {
  int a, b;
  Place place;
};

// Hasse-class assignment problem for the pieces q_i of a decomposition
// q = q_1 + ... + q_r with q_i carrying the module of column i.
class ParityEngine {
public:
  ParityEngine(const GlobalInvariants& form, std::vector<Column> cols, long bound)
      : form_(form), cols_(std::move(cols)), bound_(bound), uf_(static_cast<int>(cols_.size())) {}

  enum class Outcome { solved, infeasible, unresolved, disconnected };

  Outcome run() {
    std::vector<Rat> ds;
    for (auto& c : cols_) ds.push_back(c.d);
    const int r = static_cast<int>(cols_.size());
    for (auto& v : candidate_places(form_, ds)) {
      const bool rho = is_minus(form_.hasse(v) * pairwise_symbol(ds, v));
      if (v.is_real()) {
        rho_inf_ = rho;
        continue;
      }
      // Rows with a zero target still contribute edges between free columns.
      rows_.push_back(v);
      rho_.push_back(rho);
    }
    int rho_total = rho_inf_;
    for (bool b : rho_) rho_total += b;
    parity_assert(rho_total % 2 == 0, "sum of row targets is odd");

    x_.assign(rows_.size(), std::vector<char>(static_cast<std::size_t>(r), 0));
    for (std::size_t row = 0; row < rows_.size(); ++row) {
      const Place& v = rows_[row];
      bool target = rho_[row];
      std::vector<int> free;
      bool unknown = false;
      for (int i = 0; i < r; ++i) {
        const auto h = locally_hyperbolic(cols_[static_cast<std::size_t>(i)].f, v);
        if (h.has_value() && !*h) {
          free.push_back(i);
          continue;
        }
        // Unknown cells take the forced hyperbolic value, which is always allowed.
        unknown = unknown || !h.has_value();
        const bool fixed = is_minus(hyperbolic_hasse(cols_[static_cast<std::size_t>(i)].dim, v));
        x_[row][static_cast<std::size_t>(i)] = fixed;
        target ^= fixed;
      }
      if (free.empty()) {
        if (target) {
          failed_place_ = v;
          return unknown ? Outcome::unresolved : Outcome::infeasible;
        }
        continue;
      }
      x_[row][static_cast<std::size_t>(free.front())] = target;
      for (std::size_t k = 1; k < free.size(); ++k) {
        edges_.push_back({free.front(), free[k], v});
        uf_.unite(free.front(), free[k]);
      }
    }
    if (solve_infinity()) return Outcome::solved;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        if (uf_.find(i) == uf_.find(j)) continue;
        if (auto p = find_pair_place(cols_[static_cast<std::size_t>(i)].f, cols_[static_cast<std::size_t>(j)].f, bound_)) {
          edges_.push_back({i, j, Place::finite(*p)});
          uf_.unite(i, j);
        }
      }
    return solve_infinity() ? Outcome::solved : Outcome::disconnected;
  }

  const std::optional<Place>& failed_place() const { return failed_place_; }

  /// Per-column invariants of a solved assignment.
  std::vector<GlobalInvariants> pieces() {
    const int r = static_cast<int>(cols_.size());
    std::vector<char> inf(static_cast<std::size_t>(r));
    std::vector<char> odd(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      const int s = s_choice_[static_cast<std::size_t>(i)];
      inf[static_cast<std::size_t>(i)] = (s % 4 == 2 || s % 4 == 3);
      odd[static_cast<std::size_t>(i)] = column_parity(i) ^ inf[static_cast<std::size_t>(i)];
    }
    int inf_sum = 0, odd_sum = 0;
    for (int i = 0; i < r; ++i) {
      inf_sum += inf[static_cast<std::size_t>(i)];
      odd_sum += odd[static_cast<std::size_t>(i)];
    }
    parity_assert(inf_sum % 2 == rho_inf_, "real row misses its target");
    parity_assert(odd_sum % 2 == 0, "sum of column parities is odd");

    // Repair odd columns pairwise along edge paths; each edge toggles its two ends.
    std::map<Place, std::vector<char>> extra;
    auto cell = [&](const Place& v, int i) -> char& {
      auto it = std::find(rows_.begin(), rows_.end(), v);
      if (it != rows_.end()) return x_[static_cast<std::size_t>(it - rows_.begin())][static_cast<std::size_t>(i)];
      auto& row = extra[v];
      row.resize(static_cast<std::size_t>(r), 0);
      return row[static_cast<std::size_t>(i)];
    };
    std::vector<int> pending;
    for (int i = 0; i < r; ++i)
      if (odd[static_cast<std::size_t>(i)]) pending.push_back(i);
    while (!pending.empty()) {
      const int a = pending.front();
      auto partner = std::find_if(pending.begin() + 1, pending.end(), [&](int b) { return uf_.find(a) == uf_.find(b); });
      if (partner == pending.end()) throw std::logic_error("odd column without partner in its component");
      const int b = *partner;
      pending.erase(partner);
      pending.erase(pending.begin());
      for (const Edge* e : path(a, b)) {
        cell(e->place, e->a) ^= 1;
        cell(e->place, e->b) ^= 1;
      }
    }

    std::vector<GlobalInvariants> out;
    for (int i = 0; i < r; ++i) {
      const Column& c = cols_[static_cast<std::size_t>(i)];
      GlobalInvariants g;
      g.dim = c.dim;
      g.det = SquareClass(c.d);
      const int s = s_choice_[static_cast<std::size_t>(i)];
      g.signature = {c.dim - s, s};
      if (inf[static_cast<std::size_t>(i)]) g.hasse_support.insert(Place::real());
      for (std::size_t row = 0; row < rows_.size(); ++row)
        if (x_[row][static_cast<std::size_t>(i)]) g.hasse_support.insert(rows_[row]);
      for (auto& [v, row] : extra)
        if (row[static_cast<std::size_t>(i)]) g.hasse_support.insert(v);
      parity_assert(g.hasse_support.size() % 2 == 0, "column with odd Hasse support");
      out.push_back(std::move(g));
    }
    for (std::size_t row = 0; row < rows_.size(); ++row) {
      int sum = 0;
      for (char x : x_[row]) sum += x;
      parity_assert(sum % 2 == rho_[row], "row misses its target");
    }
    for (auto& [v, row] : extra) {
      int sum = 0;
      for (char x : row) sum += x;
      parity_assert(sum % 2 == 0, "edge row is not balanced");
    }
    return out;
  }

private:
  bool column_parity(int i) const {
    bool p = false;
    for (auto& row : x_) p ^= row[static_cast<std::size_t>(i)] != 0;
    return p;
  }

  // Chooses the negative indices s_i of the pieces; the real Hasse class of
  // piece i is -1 iff s_i = 2, 3 mod 4. Succeeds when every component of the
  // edge graph ends with an even number of odd columns.
  bool solve_infinity() {
    const int r = static_cast<int>(cols_.size());
    std::map<int, int> comp_index;
    for (int i = 0; i < r; ++i) comp_index.try_emplace(uf_.find(i), static_cast<int>(comp_index.size()));
    if (comp_index.size() > 62) throw std::runtime_error("too many components for the parity search");
    std::uint64_t want = 0;
    for (int i = 0; i < r; ++i)
      if (column_parity(i)) want ^= std::uint64_t{1} << comp_index[uf_.find(i)];
    using State = std::pair<int, std::uint64_t>;
    std::vector<std::map<State, std::pair<State, int>>> layers(static_cast<std::size_t>(r) + 1);
    layers[0][{0, 0}] = {{0, 0}, 0};
    for (int i = 0; i < r; ++i) {
      const Column& c = cols_[static_cast<std::size_t>(i)];
      const std::uint64_t bit = std::uint64_t{1} << comp_index[uf_.find(i)];
      for (auto& [state, unused] : layers[static_cast<std::size_t>(i)]) {
        for (int s = c.sigma; s <= c.dim - c.sigma; s += 2) {
          const int sum = state.first + s;
          if (sum > form_.signature.neg) break;
          const bool minus = s % 4 == 2 || s % 4 == 3;
          const State next{sum, state.second ^ (minus ? bit : 0)};
          layers[static_cast<std::size_t>(i) + 1].try_emplace(next, state, s);
        }
      }
    }
    auto& last = layers[static_cast<std::size_t>(r)];
    auto it = last.find({form_.signature.neg, want});
    if (it == last.end()) return false;
    s_choice_.assign(static_cast<std::size_t>(r), 0);
    State at = it->first;
    for (int i = r; i > 0; --i) {
      const auto& [prev, s] = layers[static_cast<std::size_t>(i)].at(at);
      s_choice_[static_cast<std::size_t>(i) - 1] = s;
      at = prev;
    }
    return true;
  }

  std::vector<const Edge*> path(int from, int to) const {
    std::map<int, const Edge*> via;
    std::deque<int> queue{from};
    via[from] = nullptr;
    while (!queue.empty() && !via.count(to)) {
      const int at = queue.front();
      queue.pop_front();
      for (auto& e : edges_) {
        const int other = e.a == at ? e.b : (e.b == at ? e.a : -1);
        if (other < 0 || via.count(other)) continue;
        via[other] = &e;
        queue.push_back(other);
      }
    }
    std::vector<const Edge*> out;
    for (int at = to; at != from;) {
      const Edge* e = via.at(at);
      out.push_back(e);
      at = e->a == at ? e->b : e->a;
    }
    return out;
  }

  const GlobalInvariants& form_;
  std::vector<Column> cols_;
  long bound_;
  UnionFind uf_;
  std::vector<Place> rows_;
  std::vector<char> rho_;
  bool rho_inf_ = false;
  std::vector<std::vector<char>> x_;
  std::vector<Edge> edges_;
  std::vector<int> s_choice_;
  std::optional<Place> failed_place_;
};

std::optional<IsometryCertificate> assemble(const std::vector<Column>& cols, const std::vector<GlobalInvariants>& pieces,
                                            const ModuleSpec& spec, const DecideOptions& opt) {
  std::vector<Matrix> grams, ts;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (!pieces[i].realizable()) throw std::logic_error("parity engine produced an unrealizable piece");
    auto cert = realize_component(cols[i].f, cols[i].n, pieces[i], opt.certificate_budget);
    if (!cert) return std::nullopt;
    grams.push_back(cert->gram);
    ts.push_back(cert->t);
  }
  return IsometryCertificate{Matrix::direct_sum(grams), Matrix::direct_sum(ts), spec};
}

Signature sigma_requirement(const std::vector<Column>& cols) {
  int sigma = 0;
  for (auto& c : cols) sigma += c.sigma;
  return {sigma, sigma};
}

}  // namespace

PlaceSupport compute_support(const GlobalInvariants& form, const ModuleSpec& spec) {
  const TypeSplit split = validate(spec);
  std::vector<Rat> ds;
  Rat prod = 1;
  for (auto& c : split.m1) {
    ds.push_back(component_det(c));
    prod *= ds.back();
  }
  if (split.dim0() > 0) ds.insert(ds.begin(), Rat(form.det.rep()) * prod);
  PlaceSupport out;
  for (auto& v : candidate_places(form, ds)) {
    if (form.hasse(v) != hyperbolic_hasse(form.dim, v)) out.S.insert(v);
    if (is_minus(pairwise_symbol(ds, v))) out.T.insert(v);
  }
  out.Sigma = out.S;
  out.Sigma.insert(out.T.begin(), out.T.end());
  out.Sigma.insert(Place::real());
  out.Sigma.insert(Place::finite(2));
  return out;
}

Verdict decide_type1(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt) {
  const TypeSplit split = validate(spec);
  if (!spec.is_semisimple() || !split.m0.empty() || !split.m2.empty())
    throw InputError("decide_type1 needs a semisimple module with only type-1 components");
  if (form.dim != spec.dim()) throw InputError("dimension mismatch between form and module");
  const auto cols = columns_of(split.m1);

  Rat prod = 1;
  for (auto& c : cols) prod *= c.d;
  if (!(SquareClass(prod) == form.det)) return verdict(Answer::no, GlobalReason::det);
  const Signature need = sigma_requirement(cols);
  if (form.signature.pos < need.pos || form.signature.neg < need.neg ||
      (form.signature.pos - need.pos) % 2 != 0 || (form.signature.neg - need.neg) % 2 != 0)
    return verdict(Answer::no, GlobalReason::signature, Place::real());

  // Where every component is locally hyperbolic, q must be hyperbolic too;
  // with the determinant fixed that can only fail on S.
  std::optional<Place> unresolved_at;
  for (auto& v : compute_support(form, spec).S) {
    bool all_hyperbolic = true, unknown = false;
    for (auto& c : cols) {
      const auto h = locally_hyperbolic(c.f, v);
      if (!h) unknown = true;
      else if (!*h) all_hyperbolic = false;
    }
    if (!all_hyperbolic) continue;
    if (!unknown) return verdict(Answer::no, GlobalReason::hyperbolicity, v);
    if (!unresolved_at) unresolved_at = v;
  }
  if (unresolved_at) return verdict(Answer::undecided, GlobalReason::pairing_unresolved, unresolved_at);

  Verdict yes = verdict(Answer::yes, GlobalReason::none);
  if (cols.size() == 1) {
    if (opt.certificate) yes.certificate = realize_component(cols[0].f, cols[0].n, form, opt.certificate_budget);
    return yes;
  }
  const bool all_on_circle = need.pos == 0;
  ParityEngine engine(form, cols, opt.prime_bound);
  switch (engine.run()) {
    case ParityEngine::Outcome::solved: {
      const auto pieces = engine.pieces();
      GlobalInvariants total;
      for (auto& p : pieces) total = total + p;
      if (!(total == form)) throw std::logic_error("assembled pieces do not add up to the form");
      if (opt.certificate) yes.certificate = assemble(cols, pieces, spec, opt);
      return yes;
    }
    case ParityEngine::Outcome::infeasible:
      return verdict(Answer::no, GlobalReason::local_fail, engine.failed_place());
    case ParityEngine::Outcome::unresolved:
      return verdict(Answer::undecided, GlobalReason::pairing_unresolved, engine.failed_place());
    case ParityEngine::Outcome::disconnected:
      break;
  }
  // All roots on the unit circle: the real place connects every component.
  if (all_on_circle) return yes;
  Verdict out = verdict(Answer::undecided, GlobalReason::parity_disconnected_up_to_bound);
  out.search_bound = opt.prime_bound;
  return out;
}

Verdict decide_irreducible(const GlobalInvariants& form, const Poly& f, int m, const DecideOptions& opt) {
  if (m < 1) throw InputError("multiplicity must be positive");
  const ModuleSpec spec({{f, 1, m}});
  if (form.dim != spec.dim()) throw InputError("dimension mismatch between form and module");
  const TypeSplit split = validate(spec);
  if (!split.m0.empty()) return verdict(Answer::yes, GlobalReason::none);
  if (!split.m2.empty()) throw InputError("polynomial is not symmetric");
  return decide_type1(form, spec, opt);
}

Verdict decide_mixed(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt) {
  const TypeSplit split = validate(spec);
  if (!split.m2.empty()) throw InputError("decide_mixed needs a module without type-2 components");
  if (!spec.is_semisimple()) throw InputError("decide_mixed needs a semisimple module");
  if (split.m0.empty()) throw InputError("decide_mixed needs a type-0 component");
  if (form.dim != spec.dim()) throw InputError("dimension mismatch between form and module");
  const auto cols = columns_of(split.m1);
  const ModuleSpec m1(split.m1);
  const Signature need = sigma_requirement(cols);
  if (form.signature.pos < need.pos || form.signature.neg < need.neg)
    return verdict(Answer::no, GlobalReason::signature, Place::real());
  const int dim0 = split.dim0();
  if (dim0 >= 3 || cols.empty()) return verdict(Answer::yes, GlobalReason::none);

  Rat prod = 1;
  for (auto& c : cols) prod *= c.d;
  const SquareClass d0(Rat(form.det.rep()) * prod);
  std::vector<Rat> t0_signs;
  for (int i = 0; i < split.dim0_plus; ++i) t0_signs.push_back(1);
  for (int i = 0; i < split.dim0_minus; ++i) t0_signs.push_back(-1);
  auto extend = [&](Verdict v, const Matrix& block) {
    if (v.certificate)
      v.certificate = IsometryCertificate{Matrix::direct_sum({v.certificate->gram, block}),
                                          Matrix::direct_sum({v.certificate->t, Matrix::diagonal(t0_signs)}), spec};
    return v;
  };

  if (dim0 == 2 && d0.rep() != -1) {
    std::vector<Rat> ds;
    for (auto& c : cols) ds.push_back(c.d);
    std::optional<Place> unresolved_at;
    const int half = m1.dim() / 2;
    for (auto& v : candidate_places(form, ds)) {
      if (v.is_real() || local_witt_index(form.local(v)) >= half) continue;
      bool all_hyperbolic = true, unknown = false;
      for (auto& c : cols) {
        const auto h = locally_hyperbolic(c.f, v);
        if (!h) unknown = true;
        else if (!*h) all_hyperbolic = false;
      }
      if (!all_hyperbolic) continue;
      if (!unknown) return verdict(Answer::no, GlobalReason::local_fail, v);
      if (!unresolved_at) unresolved_at = v;
    }
    if (unresolved_at) return verdict(Answer::undecided, GlobalReason::pairing_unresolved, unresolved_at);
    return verdict(Answer::yes, GlobalReason::none);
  }
  if (dim0 == 2) {
    if (global_witt_index(form) < 1) return verdict(Answer::no, GlobalReason::witt);
    const Verdict inner = decide_type1(form.cancel(GlobalInvariants::hyperbolic(1)), m1, opt);
    Verdict out = extend(inner, Matrix::diagonal({Rat(1), Rat(-1)}));
    if (out.answer == Answer::yes && out.certificate) out.certificate->module = spec;
    return out;
  }
  // dim0 == 1: q = <d0> + q1 with q1 carrying the type-1 part.
  const Rat d0_value(d0.rep());
  if (!represents(form, d0_value)) {
    const GlobalInvariants probe = form + GlobalInvariants::of_diagonal({-d0_value});
    for (auto& v : probe.support())
      if (local_witt_index(probe.local(v)) == 0) return verdict(Answer::no, GlobalReason::local_fail, v);
    return verdict(Answer::no, GlobalReason::local_fail);
  }
  const Verdict inner = decide_type1(form.cancel(GlobalInvariants::of_diagonal({d0_value})), m1, opt);
  return extend(inner, Matrix::diagonal({d0_value}));
}

Verdict decide_global(const GlobalInvariants& form, const ModuleSpec& spec, const DecideOptions& opt) {
  validate(spec);
  if (form.dim != spec.dim()) throw InputError("dimension mismatch between form and module");
  if (!type0_blocks_paired(spec)) return verdict(Answer::no, GlobalReason::type0_parity);
  const auto odd = odd_semisimplification(spec);
  if (global_witt_index(form) < odd.tau) return verdict(Answer::no, GlobalReason::witt);
  const GlobalInvariants reduced = form.cancel(GlobalInvariants::hyperbolic(odd.tau));
  const TypeSplit split = validate(odd.mbar);
  Verdict out;
  if (split.m1.empty()) {
    out = verdict(Answer::yes, GlobalReason::none);
  } else if (split.m0.empty()) {
    out = decide_type1(reduced, odd.mbar, opt);
  } else {
    out = decide_mixed(reduced, odd.mbar, opt);
  }
  // Certificates describe q itself only when nothing was cancelled.
  if (odd.tau > 0) out.certificate.reset();
  return out;
}

Verdict decide_global(const Matrix& gram, const ModuleSpec& spec, const DecideOptions& opt) {
  require_gram(gram);
  Verdict out = decide_global(invariants(gram), spec, opt);
  const TypeSplit split = validate(spec);
  if (opt.certificate && out.answer == Answer::yes && !out.certificate && spec.is_semisimple() && split.m1.empty() &&
      split.m2.empty()) {
    // Type-0 only: t = +-1 on a diagonalization of q.
    std::vector<Rat> signs;
    for (int i = 0; i < split.dim0_plus; ++i) signs.push_back(1);
    for (int i = 0; i < split.dim0_minus; ++i) signs.push_back(-1);
    out.certificate = IsometryCertificate{Matrix::diagonal(diagonalize(gram)), Matrix::diagonal(signs), spec};
  }
  return out;
}

}  // namespace isoq
