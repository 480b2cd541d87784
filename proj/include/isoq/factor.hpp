#pragma once
// Complete factorization over Q: squarefree decomposition, modular
// factorization, Hensel lifting and subset recombination.

#include "isoq/poly.hpp"

#include <utility>
#include <vector>

namespace isoq {

/// Monic irreducible factors with exponents, in canonical order. The
/// leading coefficient of f is dropped.
std::vector<std::pair<Poly, int>> factor_rational(const Poly& f);

bool is_irreducible(const Poly& f);

}  // namespace isoq
