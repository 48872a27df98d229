#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coverph/morphism.hpp"

namespace coverph {

// A simplex is its strictly increasing tuple of global vertex ids; identity
// is the vertex set, regardless of which patch the simplex is seen in.
using Simplex = std::vector<int>;

// A filtered simplicial complex: per-dimension lists of (simplex, value),
// sorted by (value, vertex tuple). Closure and monotonicity are validated on
// construction and the object is immutable afterwards.
class FilteredComplex {
public:
    FilteredComplex() = default;

    // Builds (and validates) a complex from an arbitrary-order simplex list.
    // Throws UsageError on duplicate simplices, broken closure, or a face
    // with a larger filtration value than its coface.
    static FilteredComplex build(std::vector<std::pair<Simplex, Filt>> simplices);

    int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    int count(int q) const {
        return (q < 0 || q > max_dim()) ? 0 : static_cast<int>(by_dim_[static_cast<std::size_t>(q)].size());
    }
    int total_size() const;
    bool empty() const { return by_dim_.empty(); }

    const Simplex& simplex(int q, int i) const { return by_dim_[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)].first; }
    Filt filtration(int q, int i) const { return by_dim_[static_cast<std::size_t>(q)][static_cast<std::size_t>(i)].second; }

    // Index of a simplex within its dimension, or -1 if absent.
    int index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s) >= 0; }
    // Filtration value of a stored simplex; throws UsageError if absent.
    Filt filtration_of(const Simplex& s) const;

    const std::vector<std::pair<Simplex, Filt>>& dim_simplices(int q) const {
        return by_dim_[static_cast<std::size_t>(q)];
    }

private:
    std::vector<std::vector<std::pair<Simplex, Filt>>> by_dim_;
    std::vector<std::map<Simplex, int>> index_;
};

// Vietoris–Rips complex of a Euclidean point cloud: vertices at 0, each
// higher simplex at the max pairwise distance among its vertices; only
// simplices with value <= max_filt and dimension <= max_dim are kept.
FilteredComplex vietoris_rips(const std::vector<std::vector<double>>& points, int max_dim,
                              Filt max_filt);

// The chain module S_q(X): one bar [filtration, +inf) per q-simplex, in
// complex order.
BarcodeBasis chain_basis(const FilteredComplex& X, int q);

// Simplicial boundary d_q : S_q(X) -> S_{q-1}(X), entry (-1)^i for the face
// omitting vertex i. The overload taking pre-built bases lets callers share
// one basis object (and its identity) across several matrices.
PersistenceMorphismMatrix boundary_matrix(const FilteredComplex& X, int q, const PrimeField& F);
PersistenceMorphismMatrix boundary_matrix(const FilteredComplex& X, int q, const PrimeField& F,
                                          BarcodeBasis domain, BarcodeBasis codomain);

} // namespace coverph
