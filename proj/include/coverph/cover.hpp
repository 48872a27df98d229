#pragma once

#include <vector>

#include "coverph/simplicial.hpp"

namespace coverph {

// Axis-aligned closed box.
struct Box {
    std::vector<double> lo, hi;
    bool contains(const std::vector<double>& pt) const;
};

// A cover of a global filtered complex by subcomplex patches. Every global
// simplex appears in at least one patch, with its global filtration value
// wherever it appears.
struct CoverAssignment {
    FilteredComplex global;
    std::vector<FilteredComplex> patches;
    std::vector<Box> boxes; // region metadata; empty for explicit covers
};

// Grid cover of a point cloud: the bounding box is split into
// divisions[0] x divisions[1] x ... boxes, each enlarged by overlap/2 per
// side; a simplex belongs to patch i iff all its vertices lie in box i.
// Throws CoverViolationError if some global simplex lies in no patch.
CoverAssignment cubical_cover(const FilteredComplex& X,
                              const std::vector<std::vector<double>>& points,
                              const std::vector<int>& divisions, double overlap);

// Cover given directly by per-patch simplex lists (each must be a subcomplex
// of X); filtration values are inherited from X. Throws CoverViolationError
// if the union misses a global simplex.
CoverAssignment explicit_cover(const FilteredComplex& X,
                               const std::vector<std::vector<Simplex>>& patch_simplices);

// The nerve: per dimension k, the lexicographically sorted index sets
// sigma = {i_0 < ... < i_k} with nonempty patch intersection.
struct Nerve {
    std::vector<std::vector<std::vector<int>>> simplices;
    int max_dim() const { return static_cast<int>(simplices.size()) - 1; }
    int count(int k) const {
        return (k < 0 || k > max_dim()) ? 0 : static_cast<int>(simplices[static_cast<std::size_t>(k)].size());
    }
    const std::vector<int>& simplex(int k, int i) const {
        return simplices[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
    int index_of(const std::vector<int>& sigma) const; // -1 if absent
    bool contains(const std::vector<int>& sigma) const { return index_of(sigma) >= 0; }
};

// All sigma with nonempty intersection up to dimension max_nerve_dim
// (default: number of patches - 1 when negative).
Nerve nerve(const CoverAssignment& cover, int max_nerve_dim = -1);

// U_sigma, the intersection of the patches indexed by sigma (empty complex
// if they share nothing). `restrict` additionally requires sigma to be a
// nerve simplex and throws UsageError otherwise.
FilteredComplex intersection_complex(const CoverAssignment& cover, const std::vector<int>& sigma);
FilteredComplex restrict(const CoverAssignment& cover, const Nerve& nerve,
                         const std::vector<int>& sigma);

// Chain module of the k-th Cech position, oplus_{sigma in N_k} S_q(U_sigma),
// with sigma in lexicographic order and simplices in complex order. `pieces`
// holds the U_sigma in the same order; `offset[i]` is the basis index where
// component i starts.
struct CechModule {
    BarcodeBasis basis;
    std::vector<FilteredComplex> pieces;
    std::vector<int> offset;
};
CechModule cech_module(const CoverAssignment& cover, const Nerve& nerve, int k, int q);

// Cech differential delta_k : oplus_{sigma in N_k} S_q(U_sigma) ->
// oplus_{tau in N_{k-1}} S_q(U_tau), alternating-sign sum over the facets of
// sigma. For k = 0 the codomain is S_q(global) and components are summed
// (augmentation; used in exactness tests). The module arguments must come
// from cech_module on the same cover/nerve so basis identities line up.
PersistenceMorphismMatrix cech_differential(const CoverAssignment& cover, const Nerve& nerve,
                                            int k, int q, const CechModule& from,
                                            const CechModule& to, const PrimeField& F);
// Convenience overload building both modules itself (k >= 1) or the
// augmentation onto chain_basis(global, q) (k = 0).
PersistenceMorphismMatrix cech_differential(const CoverAssignment& cover, const Nerve& nerve,
                                            int k, int q, const PrimeField& F);

} // namespace coverph
