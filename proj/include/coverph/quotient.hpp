#pragma once

#include <vector>

#include "coverph/image_kernel.hpp"

namespace coverph {

// A barcode basis of a subquotient G/H of the module with basis V, with one
// representative vector over V per generator.
struct QuotientResult {
    BarcodeBasis basis;
    std::vector<BarcodeVector> reps;
};

// Computes G/H by a left-to-right sweep on the block matrix (h^T | g^T):
// H columns keep reduction priority, and a G column reducing to zero marks
// the death of its quotient class. Preconditions (pointwise independence of
// H and G, span H ⊆ span G) are verified by pointwise rank accounting.
QuotientResult quotient_basis(const std::vector<BarcodeVector>& H,
                              const std::vector<BarcodeVector>& G, const BarcodeBasis& V,
                              const PrimeField& F);

// Homology of a chain of persistence modules V_0 <- V_1 <- ... <- V_n with
// differentials d[j] : V_{j+1} -> V_j.
struct ChainHomologyResult {
    // Per degree j: homology basis Q_j with representatives over V_j.
    std::vector<QuotientResult> homology;
    // Per differential d_{j+1} (index j): image/kernel data with preimages,
    // retained for downstream linear solves.
    std::vector<ImageKernelResult> boundary_data;
};

ChainHomologyResult chain_homology(const std::vector<BarcodeBasis>& modules,
                                   const std::vector<PersistenceMorphismMatrix>& differentials,
                                   const PrimeField& F);

} // namespace coverph
