#include "isoq/kxmodule.hpp"

#include "isoq/factor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace isoq {

ModuleSpec::ModuleSpec(std::vector<ModuleComponent> components) {
  std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
    if (a.f == b.f) return a.e < b.e;
    return a.f < b.f;
  });
  for (auto& c : components) {
    if (!c_.empty() && c_.back().f == c.f && c_.back().e == c.e) {
      c_.back().n += c.n;
    } else {
      c_.push_back(std::move(c));
    }
  }
}

int ModuleSpec::dim() const {
  int d = 0;
  for (auto& c : c_) d += c.f.degree() * c.e * c.n;
  return d;
}

bool ModuleSpec::is_semisimple() const {
  return std::all_of(c_.begin(), c_.end(), [](auto& c) { return c.e == 1; });
}

TypeSplit validate(const ModuleSpec& spec) {
  TypeSplit split;
  for (auto& c : spec.components()) {
    if (c.e < 1 || c.n < 1) throw InputError("module exponents and multiplicities must be positive");
    if (!c.f.is_monic() || c.f.degree() < 1) throw InputError("module polynomial must be monic of positive degree");
    if (!is_irreducible(c.f)) throw InputError("module polynomial " + c.f.to_string() + " is reducible");
    if (c.f.coeff(0) == 0) throw InputError("module polynomial X has no star partner");
    const int d = c.f.degree() * c.e * c.n;
    split.dim += d;
    switch (classify_irreducible(c.f)) {
      case PolyType::type0:
        split.m0.push_back(c);
        (c.f.coeff(0) == -1 ? split.dim0_plus : split.dim0_minus) += d;
        break;
      case PolyType::type1:
        split.m1.push_back(c);
        break;
      case PolyType::type2_member: {
        const Poly partner = star(c.f);
        const bool present = std::any_of(spec.components().begin(), spec.components().end(), [&](auto& o) {
          return o.f == partner && o.e == c.e && o.n == c.n;
        });
        if (!present) throw InputError("missing star partner " + partner.to_string() + " of " + c.f.to_string());
        split.m2.push_back(c);
        split.m2_half_dim += d;
        break;
      }
    }
  }
  split.m2_half_dim /= 2;
  return split;
}

Poly characteristic_polynomial(const ModuleSpec& spec) {
  Poly out = Poly::constant(Rat(1));
  for (auto& c : spec.components()) out *= c.f.pow(static_cast<unsigned>(c.e * c.n));
  return out;
}

OddSemisimplification odd_semisimplification(const ModuleSpec& spec) {
  const TypeSplit split = validate(spec);
  std::vector<ModuleComponent> kept;
  for (const auto* part : {&split.m0, &split.m1})
    for (auto& c : *part)
      if (c.e % 2 == 1) kept.push_back({c.f, 1, c.n});
  OddSemisimplification out;
  out.mbar = ModuleSpec(std::move(kept));
  out.tau = (spec.dim() - out.mbar.dim()) / 2;
  return out;
}

bool is_hyperbolic_module(const ModuleSpec& spec) { return odd_semisimplification(spec).mbar.empty(); }

bool type0_blocks_paired(const ModuleSpec& spec) {
  for (auto& c : spec.components())
    if (c.f.degree() == 1 && c.f.coeff(0) * c.f.coeff(0) == 1 && c.e % 2 == 0 && c.n % 2 != 0) return false;
  return true;
}

namespace {

struct PairingCache {
  std::shared_mutex mutex;
  std::map<std::pair<std::string, std::string>, std::unique_ptr<LocalFactorization>> entries;
};

PairingCache& pairing_cache() {
  static PairingCache cache;
  return cache;
}

}  // namespace

const LocalFactorization& cached_pairing(const Poly& f, const Int& p) {
  auto& cache = pairing_cache();
  const auto key = std::make_pair(f.to_string(), p.get_str());
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(key); it != cache.entries.end()) return *it->second;
  }
  auto computed = std::make_unique<LocalFactorization>(local_factor_pairing(f, p));
  std::unique_lock lock(cache.mutex);
  // Results are deterministic, so an entry inserted meanwhile is as good as ours.
  auto [it, inserted] = cache.entries.try_emplace(key, std::move(computed));
  return *it->second;
}

std::optional<bool> locally_hyperbolic(const Poly& f, const Place& v) {
  if (v.is_real()) return unit_circle_root_count(f).on == 0;
  return cached_pairing(f, v.prime()).hyperbolic();
}

Rat component_det(const ModuleComponent& c) {
  Rat base = c.f.eval(Rat(1)) * c.f.eval(Rat(-1));
  Rat out = 1;
  for (int i = 0; i < c.n * c.e; ++i) out *= base;
  return out;
}

LocalModuleShape localize(const ModuleSpec& spec, const Place& v) {
  if (!spec.is_semisimple()) throw InputError("localize requires a semisimple module");
  const TypeSplit split = validate(spec);
  LocalModuleShape shape;
  shape.place = v;
  shape.n0_dim = split.dim0();
  shape.n2_half_dim = split.m2_half_dim;
  for (auto& c : split.m1) {
    if (v.is_real()) {
      const CircleCount cc = unit_circle_root_count(c.f);
      shape.n1_dim += cc.on * c.n;
      shape.n2_half_dim += cc.off * c.n / 2;
      continue;
    }
    const LocalFactorization& lf = cached_pairing(c.f, v.prime());
    int paired = 0;
    for (auto& fac : lf.factors) {
      if (fac.unresolved) {
        shape.unresolved_dim += fac.degree * c.n;
      } else if (fac.tag == FactorTag::paired) {
        paired += fac.degree;
      } else {
        shape.n1_dim += fac.degree * c.n;
      }
    }
    shape.n2_half_dim += paired * c.n / 2;
  }
  shape.resolved = shape.unresolved_dim == 0;
  return shape;
}

}  // namespace isoq
