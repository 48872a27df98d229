#pragma once

#include <vector>

#include "coverph/field.hpp"
#include "coverph/interval.hpp"
#include "coverph/simplicial.hpp"

namespace coverph {

// Ground-truth persistent homology of a filtered complex by plain column
// reduction of the global boundary matrix in filtration order, without
// clearing or twist optimizations: simple and obviously correct, not fast.
// Returns one bar multiset per dimension 0..max_dim (degenerate bars
// dropped, essential classes get death = +inf), each sorted for stable
// comparison.
std::vector<std::vector<Interval>> standard_reduction_ph(const FilteredComplex& K, int max_dim,
                                                         const PrimeField& F);

} // namespace coverph
