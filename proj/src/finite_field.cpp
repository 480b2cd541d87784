#include "isoq/finite_field.hpp"

#include "isoq/locdec.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace isoq::ff {

namespace {

bool zpoly_less(const modp::ZPoly& a, const modp::ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_type0(const modp::ZPoly& f, const Int& p) {
  return f.size() == 2 && f[1] == 1 && (f[0] == 1 || f[0] == p - 1);
}

long mod(long a, long p) { return ((a % p) + p) % p; }

long inverse_mod(long a, long p) {
  long r = 1, base = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

MatrixFp multiply(const MatrixFp& a, const MatrixFp& b, long p) {
  const std::size_t n = a.size();
  MatrixFp c(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
    }
  return c;
}

int rank_mod(MatrixFp m, long p) {
  const std::size_t n = m.size();
  int rank = 0;
  for (std::size_t col = 0; col < n && static_cast<std::size_t>(rank) < n; ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    const long inv = inverse_mod(m[static_cast<std::size_t>(rank)][col], p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == static_cast<std::size_t>(rank) || m[i][col] == 0) continue;
      const long factor = m[i][col] * inv % p;
      for (std::size_t j = 0; j < n; ++j) m[i][j] = mod(m[i][j] - factor * m[static_cast<std::size_t>(rank)][j], p);
    }
    ++rank;
  }
  return rank;
}

MatrixFp eval_poly(const modp::ZPoly& f, const MatrixFp& t, long p) {
  const std::size_t n = t.size();
  MatrixFp acc(n, std::vector<long>(n, 0));
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = multiply(acc, t, p);
    for (std::size_t j = 0; j < n; ++j) acc[j][j] = mod(acc[j][j] + f[i].get_si(), p);
  }
  return acc;
}

long det_mod(MatrixFp m, long p) {
  const std::size_t n = m.size();
  long det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = mod(-det, p);
    }
    det = det * m[col][col] % p;
    const long inv = inverse_mod(m[col][col], p);
    for (std::size_t i = col + 1; i < n; ++i) {
      const long factor = m[i][col] * inv % p;
      for (std::size_t j = col; j < n; ++j) m[i][j] = mod(m[i][j] - factor * m[col][j], p);
    }
  }
  return det;
}

// Monic irreducible polynomials over F_p of degree <= max_degree with f(0) != 0.
std::vector<modp::ZPoly> irreducibles(const Int& p, int max_degree) {
  std::vector<modp::ZPoly> out;
  for (int d = 1; d <= max_degree; ++d)
    for (auto& f : modp::monic_polys(d, p))
      if (f[0] != 0 && modp::is_irreducible(f, p)) out.push_back(f);
  return out;
}

}  // namespace

Module::Module(Int p, std::vector<Component> components) : p_(std::move(p)) {
  std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
    if (a.f != b.f) return zpoly_less(a.f, b.f);
    return a.e < b.e;
  });
  for (auto& c : components) {
    if (!c_.empty() && c_.back().f == c.f && c_.back().e == c.e) c_.back().n += c.n;
    else c_.push_back(std::move(c));
  }
}

int Module::dim() const {
  int d = 0;
  for (auto& c : c_) d += modp::degree(c.f) * c.e * c.n;
  return d;
}

std::string Module::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& c : c_) {
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (std::size_t i = 0; i < c.f.size(); ++i) os << (i ? "," : "") << c.f[i].get_str();
    os << "]^" << c.e << "x" << c.n;
  }
  return first ? "0" : os.str();
}

void validate(const Module& m) {
  const Int& p = m.p();
  if (p == 2 || !is_prime(p)) throw InputError("finite-field modules need an odd prime characteristic");
  for (auto& c : m.components()) {
    if (c.e < 1 || c.n < 1) throw InputError("module exponents and multiplicities must be positive");
    if (modp::degree(c.f) < 1 || c.f.back() != 1) throw InputError("module polynomial must be monic");
    if (c.f[0] == 0) throw InputError("module polynomial X has no star partner");
    if (!modp::is_irreducible(c.f, p)) throw InputError("module polynomial is reducible over F_p");
    const auto partner = modp::star(c.f, p);
    if (partner == c.f) continue;
    const bool present = std::any_of(m.components().begin(), m.components().end(),
                                     [&](auto& o) { return o.f == partner && o.e == c.e && o.n == c.n; });
    if (!present) throw InputError("missing star partner over F_p");
  }
}

OddPart odd_semisimplification(const Module& m) {
  validate(m);
  std::vector<Component> kept;
  OddPart out;
  for (auto& c : m.components()) {
    if (c.e % 2 == 0 || modp::star(c.f, m.p()) != c.f) continue;
    kept.push_back({c.f, 1, c.n});
    out.has_type0 = out.has_type0 || is_type0(c.f, m.p());
  }
  out.mbar = Module(m.p(), std::move(kept));
  out.tau = (m.dim() - out.mbar.dim()) / 2;
  return out;
}

bool type0_blocks_paired(const Module& m) {
  for (auto& c : m.components())
    if (is_type0(c.f, m.p()) && c.e % 2 == 0 && c.n % 2 != 0) return false;
  return true;
}

std::vector<Module> self_dual_modules(const Int& p, int dim) {
  // Self-dual building blocks: (f, e) with f = f*, or the pair (g, e) + (g*, e).
  struct Unit {
    std::vector<Component> parts;
    int dim;
  };
  std::vector<Unit> units;
  for (auto& f : irreducibles(p, dim)) {
    const auto partner = modp::star(f, p);
    if (partner != f && !zpoly_less(f, partner)) continue;
    const int base = modp::degree(f) * (partner == f ? 1 : 2);
    for (int e = 1; base * e <= dim; ++e) {
      Unit u{{{f, e, 1}}, base * e};
      if (partner != f) u.parts.push_back({partner, e, 1});
      units.push_back(u);
    }
  }
  std::vector<Module> out;
  std::vector<Component> chosen;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int left) {
    if (left == 0) {
      out.emplace_back(p, chosen);
      return;
    }
    if (idx == units.size()) return;
    rec(idx + 1, left);
    const Unit& u = units[idx];
    for (int count = 1; count * u.dim <= left; ++count) {
      for (auto c : u.parts) {
        c.n = count;
        chosen.push_back(c);
      }
      rec(idx + 1, left - count * u.dim);
      chosen.resize(chosen.size() - u.parts.size());
    }
  };
  rec(0, dim);
  std::sort(out.begin(), out.end());
  return out;
}

Module module_of(const MatrixFp& t, long p) {
  const int n = static_cast<int>(t.size());
  std::vector<Component> comps;
  int accounted = 0;
  for (auto& f : irreducibles(Int(p), n)) {
    const int deg = modp::degree(f);
    const MatrixFp ft = eval_poly(f, t, p);
    MatrixFp power = ft;
    std::vector<int> at_least{0};
    int prev_null = 0;
    while (true) {
      const int null = n - rank_mod(power, p);
      if (null == prev_null) break;
      at_least.push_back((null - prev_null) / deg);
      prev_null = null;
      power = multiply(power, ft, p);
    }
    accounted += prev_null;
    at_least.push_back(0);
    for (std::size_t k = 1; k + 1 < at_least.size(); ++k) {
      const int exact = at_least[k] - at_least[k + 1];
      if (exact > 0) comps.push_back({f, static_cast<int>(k), exact});
    }
    if (accounted == n) break;
  }
  return Module(Int(p), std::move(comps));
}

std::vector<long> diagonalize(const MatrixFp& g, long p) {
  MatrixFp a = g;
  const std::size_t n = a.size();
  auto add_rc = [&](std::size_t dst, std::size_t src, long c) {
    for (std::size_t k = 0; k < n; ++k) a[dst][k] = mod(a[dst][k] + c * a[src][k], p);
    for (std::size_t k = 0; k < n; ++k) a[k][dst] = mod(a[k][dst] + c * a[k][src], p);
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][piv] == 0) ++piv;
      if (piv < n) {
        std::swap(a[k], a[piv]);
        for (auto& row : a) std::swap(row[k], row[piv]);
      } else {
        std::size_t j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) throw InputError("degenerate form over F_p");
        add_rc(k, j, 1);
      }
    }
    const long inv = inverse_mod(a[k][k], p);
    for (std::size_t i = k + 1; i < n; ++i)
      if (a[i][k] != 0) add_rc(i, k, mod(-a[i][k] * inv, p));
  }
  std::vector<long> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  return d;
}

OracleReport oracle(long q, int dim, bool parallel) {
  if (q <= 2 || !is_prime(Int(q))) throw InputError("oracle-ff needs an odd prime q");
  if (dim < 1 || dim > 4) throw InputError("oracle-ff supports dimensions 1 to 4");
  const long p = q;
  OracleReport report;
  report.q = q;
  report.dim = dim;

  // All symmetric matrices; keep the first of each determinant square class.
  const std::size_t n = static_cast<std::size_t>(dim);
  const int slots = dim * (dim + 1) / 2;
  long total = 1;
  for (int i = 0; i < slots; ++i) total *= p;
  std::map<int, MatrixFp> reps;
  for (long code = 0; code < total; ++code) {
    MatrixFp g(n, std::vector<long>(n));
    long c = code;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        g[i][j] = g[j][i] = c % p;
        c /= p;
      }
    const long det = det_mod(g, p);
    if (det == 0) continue;
    ++report.forms_enumerated;
    reps.try_emplace(legendre(Int(det), Int(p)), g);
  }

  long vectors = 1;
  for (int i = 0; i < dim; ++i) vectors *= p;
  auto vec = [&](long code) {
    std::vector<long> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = code % p;
      code /= p;
    }
    return v;
  };
  auto pair = [&](const MatrixFp& g, const std::vector<long>& x, const std::vector<long>& y) {
    long s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s = (s + x[i] * g[i][j] % p * y[j]) % p;
    return s;
  };
  const auto modules = self_dual_modules(Int(p), dim);

  for (auto& entry : reps) {
    const MatrixFp& g = entry.second;
    std::map<std::string, Module> realized;
    long isometries = 0;
    // Columns c_0..c_{n-1} of t with c_a^T G c_b = G_ab, built by backtracking.
#pragma omp parallel if (parallel)
    {
      std::map<std::string, Module> local;
      long local_count = 0;
      std::vector<std::vector<long>> cols(n);
      std::function<void(std::size_t)> extend = [&](std::size_t a) {
        if (a == n) {
          MatrixFp t(n, std::vector<long>(n));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) t[i][j] = cols[j][i];
          Module m = module_of(t, p);
          local.try_emplace(m.to_string(), std::move(m));
          ++local_count;
          return;
        }
        for (long code = 0; code < vectors; ++code) {
          cols[a] = vec(code);
          bool ok = true;
          for (std::size_t b = 0; b <= a && ok; ++b) ok = pair(g, cols[a], cols[b]) == g[a][b];
          if (ok) extend(a + 1);
        }
      };
#pragma omp for schedule(dynamic)
      for (long code = 0; code < vectors; ++code) {
        cols[0] = vec(code);
        if (pair(g, cols[0], cols[0]) == g[0][0]) extend(1);
      }
#pragma omp critical
      {
        realized.insert(local.begin(), local.end());
        isometries += local_count;
      }
    }
    report.isometries_enumerated += isometries;
    const auto diag = diagonalize(g, p);
    std::vector<Int> diag_int(diag.begin(), diag.end());
    for (auto& m : modules) {
      OraclePair pr;
      pr.form = diag;
      pr.module = m;
      pr.realized = realized.count(m.to_string()) > 0;
      pr.decided = decide_finite_field(diag_int, m, Int(q)).answer == Answer::yes;
      if (pr.realized != pr.decided) report.mismatches.push_back(pr);
      report.pairs.push_back(std::move(pr));
    }
  }
  return report;
}

}  // namespace isoq::ff
