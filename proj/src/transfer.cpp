#include "isoq/transfer.hpp"

#include "isoq/factor.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace isoq {

namespace {

Poly x_inverse(const Poly& f) {
  // X^{-1} = -(f(X) - f(0)) / (f(0) X) modulo f.
  const Rat c0 = f.coeff(0);
  if (c0 == 0) throw InputError("X is not invertible modulo f");
  std::vector<Rat> c;
  for (int i = 1; i <= f.degree(); ++i) c.push_back(-f.coeff(i) / c0);
  return Poly(c) % f;
}

// Power sums p_0..p_{n-1} of the roots of monic f (Newton's identities).
std::vector<Rat> power_sums(const Poly& f) {
  const int n = f.degree();
  std::vector<Rat> p(static_cast<std::size_t>(std::max(n, 1)));
  p[0] = n;
  for (int k = 1; k < n; ++k) {
    Rat acc = Rat(k) * f.coeff(n - k);
    for (int j = 1; j < k; ++j) acc += f.coeff(n - j) * p[static_cast<std::size_t>(k - j)];
    p[static_cast<std::size_t>(k)] = -acc;
  }
  return p;
}

Matrix companion(const Poly& f) {
  const int n = f.degree();
  Matrix c(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -f.coeff(i);
  return c;
}

void require_fixed(const Poly& a, const Poly& f) {
  if ((a % f).is_zero()) throw InputError("hermitian coefficient is zero in K");
  if (involution(a, f) != a % f) throw InputError("hermitian coefficient is not fixed by the involution");
}

Matrix transfer_block(const Poly& f, const Poly& alpha, const std::vector<Rat>& sums, const Poly& xinv) {
  const int n = f.degree();
  auto trace = [&](const Poly& a) {
    Rat t = 0;
    for (int j = 0; j <= a.degree(); ++j) t += a.coeff(j) * sums[static_cast<std::size_t>(j)];
    return t;
  };
  // Entry (a, b) is Tr(alpha X^{a-b}); it only depends on a - b.
  std::map<int, Rat> by_shift;
  Poly up = alpha % f, down = alpha % f;
  by_shift[0] = trace(up);
  for (int k = 1; k < n; ++k) {
    up = (up * Poly::x()) % f;
    down = (down * xinv) % f;
    by_shift[k] = trace(up);
    by_shift[-k] = trace(down);
  }
  Matrix g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g(a, b) = by_shift[a - b];
  if (g.det() == 0) throw InputError("degenerate hermitian form");
  return g;
}

}  // namespace

Poly involution(const Poly& a, const Poly& f) {
  const Poly xinv = x_inverse(f);
  Poly out, power = Poly::constant(Rat(1));
  for (int i = 0; i <= a.degree(); ++i) {
    out += a.coeff(i) * power;
    power = (power * xinv) % f;
  }
  return out % f;
}

Rat field_trace(const Poly& a, const Poly& f) {
  const auto sums = power_sums(f);
  const Poly r = a % f;
  Rat t = 0;
  for (int j = 0; j <= r.degree(); ++j) t += r.coeff(j) * sums[static_cast<std::size_t>(j)];
  return t;
}

Poly fixed_element(const Poly& b, const Poly& f) {
  const Poly s = (Poly::x() + x_inverse(f)) % f;
  Poly out, power = Poly::constant(Rat(1));
  for (int i = 0; i <= b.degree(); ++i) {
    out += b.coeff(i) * power;
    power = (power * s) % f;
  }
  return out % f;
}

IsometryCertificate transfer_gram(const HermitianSpec& spec) {
  const Poly& f = spec.f;
  if (!f.is_monic() || !is_irreducible(f) || classify_irreducible(f) != PolyType::type1)
    throw InputError("transfer needs a monic irreducible symmetric polynomial of even degree");
  if (spec.alphas.empty()) throw InputError("hermitian form of rank zero");
  const auto sums = power_sums(f);
  const Poly xinv = x_inverse(f);
  std::vector<Matrix> blocks, ts;
  const Matrix c = companion(f);
  for (auto& alpha : spec.alphas) {
    require_fixed(alpha, f);
    blocks.push_back(transfer_block(f, alpha, sums, xinv));
    ts.push_back(c);
  }
  return {Matrix::direct_sum(blocks), Matrix::direct_sum(ts),
          ModuleSpec({{f, 1, static_cast<int>(spec.alphas.size())}})};
}

namespace {

// Integer polynomials of degree < d in s, ordered by height then by the
// canonical polynomial order; the zero polynomial is skipped.
std::vector<Poly> small_fixed_coefficients(int d, int max_height) {
  std::vector<Poly> out;
  for (int h = 1; h <= max_height; ++h) {
    std::vector<long> digits(static_cast<std::size_t>(d), -h);
    while (true) {
      long top = 0;
      for (long x : digits) top = std::max(top, std::labs(x));
      if (top == h) {
        std::vector<Rat> c(digits.begin(), digits.end());
        out.push_back(Poly(c));
      }
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == h) digits[i++] = -h;
      if (i == digits.size()) break;
      ++digits[i];
    }
  }
  return out;
}

}  // namespace

TwistResult twist(const HermitianSpec& spec, const Int& p, int candidates) {
  if (locally_hyperbolic(spec.f, Place::finite(p)).value_or(false))
    throw InputError("no symmetric place above " + p.get_str());
  const GlobalInvariants before = invariants(transfer_gram(spec).gram);
  const int d = spec.f.degree() / 2;
  std::optional<TwistResult> best;
  int tried = 0;
  for (int h = 1; tried < candidates; ++h) {
    for (const Poly& b : small_fixed_coefficients(d, h)) {
      long top = 0;
      for (auto& c : b.coeffs()) top = std::max(top, std::labs(c.get_num().get_si()));
      if (top != h) continue;
      if (tried++ >= candidates) break;
      HermitianSpec candidate = spec;
      candidate.alphas[0] = (fixed_element(b, spec.f) * spec.alphas[0]) % spec.f;
      if ((candidate.alphas[0]).is_zero()) continue;
      const GlobalInvariants after = invariants(transfer_gram(candidate).gram);
      std::set<Place> changed;
      std::set_symmetric_difference(before.hasse_support.begin(), before.hasse_support.end(),
                                    after.hasse_support.begin(), after.hasse_support.end(),
                                    std::inserter(changed, changed.end()));
      if (!changed.count(Place::finite(p))) continue;
      if (!best || changed.size() < best->changed.size()) best = TwistResult{candidate, b, changed};
      if (best->changed.size() <= 2) return *best;
    }
    if (h > 64) break;
  }
  if (!best) throw std::runtime_error("twist: no non-norm found within the search bound");
  return *best;
}

namespace {

// Gram [[0,I],[I,0]] on N + N^dual with t = C on N and C^{-T} on the dual.
std::pair<Matrix, Matrix> dual_pair_block(const Poly& fe) {
  const Matrix cm = companion(fe);
  const int k = fe.degree();
  Matrix g(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) g(i, k + i) = g(k + i, i) = 1;
  return {g, Matrix::direct_sum({cm, cm.inverse().transpose()})};
}

// A single block Q[X]/(f^e) for symmetric f and e > 1. The Gram matrix is
// [[0,0,I],[0,g0,0],[I,0,0]] with I of size deg(f^{e/2}) and (g0, t0) carrying
// the middle layer [Q[X]/(f)] when e is odd. The isometry is
// diag(A, t0, A^{-T}) u with A the companion matrix of f^{e/2} and u in the
// unipotent radical fixing the first block:
//   u = [[I, P, S - P g0^{-1} P^T / 2], [0, I, -g0^{-1} P^T], [0, 0, I]],
// S skew. P and S are drawn until the module is cyclic.
std::pair<Matrix, Matrix> glued_block(const Poly& f, int e, const Matrix& g0, const Matrix& t0) {
  const Matrix a = companion(f.pow(static_cast<unsigned>(e / 2)));
  const int k = a.rows(), m = g0.rows(), n = 2 * k + m;
  Matrix g(n, n);
  for (int i = 0; i < k; ++i) g(i, k + m + i) = g(k + m + i, i) = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(k + i, k + j) = g0(i, j);
  const Matrix levi = Matrix::direct_sum({a, t0, a.inverse().transpose()});
  const Matrix g0_inv = m > 0 ? g0.inverse() : Matrix();
  const ModuleSpec want({{f, e, 1}});
  std::mt19937 rng(static_cast<unsigned>(7919 * e + f.degree()));
  std::uniform_int_distribution<int> pick(-1, 1);
  for (int attempt = 0; attempt < 400; ++attempt) {
    Matrix p(k, m), s(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < m; ++j) p(i, j) = pick(rng);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        s(i, j) = pick(rng);
        s(j, i) = -s(i, j);
      }
    Matrix q = s, r(m, k);
    if (m > 0) {
      q = s - Rat(1, 2) * (p * g0_inv * p.transpose());
      r = Rat(-1) * (g0_inv * p.transpose());
    }
    Matrix u = Matrix::identity(n);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < m; ++j) u(i, k + j) = p(i, j);
      for (int j = 0; j < k; ++j) u(i, k + m + j) = q(i, j);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k; ++j) u(k + i, k + m + j) = r(i, j);
    const Matrix t = levi * u;
    if (module_of_matrix(t) == want) return {g, t};
  }
  throw std::runtime_error("no cyclic isometry found for " + f.to_string() + " to the power " + std::to_string(e));
}

// Builds the certificate; with a target determinant the first free type-0
// entry is scaled to reach it.
IsometryCertificate build_certificate(const ModuleSpec& spec, const std::optional<Rat>& target) {
  if (target && *target == 0) throw InputError("determinant must be nonzero");
  const TypeSplit split = validate(spec);
  if (!type0_blocks_paired(spec))
    throw InputError("no orthogonal isometry has (X-1)^e or (X+1)^e with e even in odd multiplicity");
  std::vector<Matrix> grams, ts;
  auto add = [&](std::pair<Matrix, Matrix> block) {
    grams.push_back(std::move(block.first));
    ts.push_back(std::move(block.second));
  };
  for (auto& c : split.m1) {
    if (c.e == 1) {
      auto cert = transfer_gram({c.f, std::vector<Poly>(static_cast<std::size_t>(c.n), Poly::constant(Rat(1)))});
      add({cert.gram, cert.t});
      continue;
    }
    const IsometryCertificate middle = transfer_gram({c.f, {Poly::constant(Rat(1))}});
    for (int i = 0; i < c.n; ++i)
      add(c.e % 2 ? glued_block(c.f, c.e, middle.gram, middle.t) : glued_block(c.f, c.e, Matrix(), Matrix()));
  }
  for (auto& c : split.m2) {
    if (!(c.f < star(c.f))) continue;
    for (int i = 0; i < c.n; ++i) add(dual_pair_block(c.f.pow(static_cast<unsigned>(c.e))));
  }
  // Type-0: e = 1 gives free diagonal entries, odd e > 1 a glued block with a
  // free middle entry, even e dual pairs with a fixed determinant.
  std::vector<Rat> unit_signs;
  std::vector<std::pair<ModuleComponent, std::size_t>> odd_blocks;
  for (auto& c : split.m0) {
    const Rat root = -c.f.coeff(0);
    if (c.e == 1) {
      for (int i = 0; i < c.n; ++i) unit_signs.push_back(root);
    } else if (c.e % 2 == 0) {
      for (int i = 0; i < c.n / 2; ++i) add(dual_pair_block(c.f.pow(static_cast<unsigned>(c.e))));
    } else {
      for (int i = 0; i < c.n; ++i) {
        odd_blocks.emplace_back(c, grams.size());
        add(glued_block(c.f, c.e, Matrix::identity(1), Matrix::diagonal({root})));
      }
    }
  }
  if (!unit_signs.empty()) {
    grams.push_back(Matrix::identity(static_cast<int>(unit_signs.size())));
    ts.push_back(Matrix::diagonal(unit_signs));
  }
  if (!target) return {Matrix::direct_sum(grams), Matrix::direct_sum(ts), spec};

  Rat det_so_far = 1;
  for (auto& g : grams) det_so_far *= g.det();
  const Rat scale(SquareClass(*target / det_so_far).rep());
  if (!unit_signs.empty()) {
    grams.back()(grams.back().rows() - 1, grams.back().cols() - 1) = scale;
  } else if (!odd_blocks.empty()) {
    const auto& [c, index] = odd_blocks.front();
    auto block = glued_block(c.f, c.e, Matrix::diagonal({scale}), Matrix::diagonal({-c.f.coeff(0)}));
    grams[index] = std::move(block.first);
    ts[index] = std::move(block.second);
  } else if (scale != 1) {
    throw InputError("determinant forced to F(1)F(-1) = " + format_rational(det_so_far));
  }
  return {Matrix::direct_sum(grams), Matrix::direct_sum(ts), spec};
}

}  // namespace

IsometryCertificate construct_with_det(const ModuleSpec& spec, const Rat& d) { return build_certificate(spec, d); }

IsometryCertificate construct(const ModuleSpec& spec) { return build_certificate(spec, std::nullopt); }

std::optional<IsometryCertificate> realize_component(const Poly& f, int n, const GlobalInvariants& target,
                                                     int budget) {
  if (target.dim != n * f.degree()) return std::nullopt;
  const int d = f.degree() / 2;
  // Scalars that can move Hasse classes at the target's primes.
  std::vector<Rat> scalars{Rat(1)};
  std::vector<Int> primes;
  for (auto& v : target.support())
    if (!v.is_real()) primes.push_back(v.prime());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    scalars.push_back(Rat(primes[i]));
    for (std::size_t j = i + 1; j < primes.size(); ++j) scalars.push_back(Rat(primes[i] * primes[j]));
  }
  std::vector<Poly> pool;
  std::vector<GlobalInvariants> pool_inv;
  for (auto& b : small_fixed_coefficients(d, d <= 2 ? 3 : 1)) {
    for (auto& c : scalars) {
      if (static_cast<int>(pool.size()) >= budget) break;
      const Poly alpha = fixed_element(c * b, f);
      try {
        pool_inv.push_back(invariants(transfer_gram({f, {alpha}}).gram));
        pool.push_back(alpha);
      } catch (const InputError&) {
      }
    }
  }
  auto finish = [&](std::vector<std::size_t> idx) {
    HermitianSpec spec{f, {}};
    for (auto i : idx) spec.alphas.push_back(pool[i]);
    return transfer_gram(spec);
  };
  // Remaining slots beyond the searched ones hold alpha = 1 (pool entry 0).
  GlobalInvariants base;
  for (int k = 2; k < n; ++k) base = base + pool_inv[0];
  int evaluated = 0;
  if (n == 1) {
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pool_inv[i] == target) return finish({i});
    return std::nullopt;
  }
  for (std::size_t i = 0; i < pool.size() && evaluated < budget * 8; ++i)
    for (std::size_t j = i; j < pool.size() && evaluated < budget * 8; ++j, ++evaluated)
      if (base + pool_inv[i] + pool_inv[j] == target) {
        std::vector<std::size_t> idx{i, j};
        for (int k = 2; k < n; ++k) idx.push_back(0);
        return finish(idx);
      }
  return std::nullopt;
}

ModuleSpec module_of_matrix(const Matrix& t) {
  if (!t.is_square()) throw InputError("module of a non-square matrix");
  const int n = t.rows();
  std::vector<ModuleComponent> comps;
  for (auto& [f, mult] : factor_rational(t.charpoly())) {
    const int deg = f.degree();
    const Matrix ft = t.eval(f);
    std::vector<int> at_least{0};  // at_least[k] = number of blocks with exponent >= k
    Matrix power = Matrix::identity(n);
    int prev_null = 0;
    for (int k = 1; k <= mult; ++k) {
      power = power * ft;
      const int null = n - power.rank();
      at_least.push_back((null - prev_null) / deg);
      prev_null = null;
      if (null == mult * deg) break;
    }
    at_least.push_back(0);
    for (std::size_t k = 1; k + 1 < at_least.size(); ++k) {
      const int exact = at_least[k] - at_least[k + 1];
      if (exact > 0) comps.push_back({f, static_cast<int>(k), exact});
    }
  }
  return ModuleSpec(std::move(comps));
}

VerifyResult verify(const IsometryCertificate& cert) {
  const Matrix& g = cert.gram;
  const Matrix& t = cert.t;
  if (!g.is_square() || !t.is_square() || g.rows() != t.rows()) return {false, "shape mismatch"};
  if (!g.is_symmetric()) return {false, "gram not symmetric"};
  if (g.det() == 0) return {false, "gram degenerate"};
  if (t.transpose() * g * t != g) return {false, "t is not an isometry"};
  const Poly chi = t.charpoly();
  const Symmetry sym = epsilon_symmetry(chi);
  if (sym == Symmetry::none) return {false, "characteristic polynomial not epsilon-symmetric"};
  if ((sym == Symmetry::symmetric) != (chi.coeff(0) == 1)) return {false, "epsilon differs from the constant term"};
  try {
    validate(cert.module);
  } catch (const InputError& e) {
    return {false, std::string("invalid module: ") + e.what()};
  }
  if (module_of_matrix(t) != cert.module) return {false, "module mismatch"};
  return {true, "ok"};
}

}  // namespace isoq
