#pragma once

#include <optional>
#include <vector>

#include "coverph/field.hpp"

namespace coverph {

// Dense GF(p) helpers used by the blockwise spectral-sequence solves and by
// the independent verification paths in the tests.

int matrix_rank(std::vector<std::vector<int>> m, const PrimeField& F);

// Solves A x = b (A given as rows); returns std::nullopt when inconsistent.
// With multiple solutions the free variables are set to zero, so the result
// is deterministic.
std::optional<std::vector<int>> solve_linear(const std::vector<std::vector<int>>& A,
                                             const std::vector<int>& b, const PrimeField& F);

} // namespace coverph
