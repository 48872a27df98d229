#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "coverph/barcode.hpp"
#include "coverph/field.hpp"

namespace coverph {

// A linear combination of generators of one BarcodeBasis, together with the
// step-function threshold 1_step and the associated interval:
//   assoc.birth = max(step, max birth over the support)
//   assoc.death = max death over the support
// Coefficients on bars already dead at assoc.birth are canonically dropped,
// so a vector is zero iff its support is empty.
struct BarcodeVector {
    std::map<int, int> coeffs; // generator index -> nonzero residue
    Filt step = 0;
    Interval assoc{0, 0};
    std::uint64_t basis_uid = 0;

    bool is_zero() const { return coeffs.empty(); }
};

// Normalizing constructor: drops zero and dead coefficients, computes assoc.
BarcodeVector make_vector(const BarcodeBasis& basis, std::map<int, int> coeffs, Filt step,
                          const PrimeField& F);

// The generator i itself, as a vector (step = its birth).
BarcodeVector unit_vector(const BarcodeBasis& basis, int i);

// The ⊞-combination sum of k_j * v_j: coefficientwise sum over GF(p), step =
// max assoc.birth over terms with k_j != 0, then normalized.
BarcodeVector bar_sum(const BarcodeBasis& basis, const PrimeField& F,
                      const std::vector<std::pair<int, const BarcodeVector*>>& terms);

// 1_s: raises the step to max(step, s) and renormalizes.
BarcodeVector apply_step(Filt s, const BarcodeVector& v, const BarcodeBasis& basis,
                         const PrimeField& F);

// Pointwise evaluation: the coefficients of v on generators alive at r, or an
// empty map when r is outside [assoc.birth, assoc.death).
std::map<int, int> evaluate_at(const BarcodeVector& v, const BarcodeBasis& basis, Filt r);

} // namespace coverph
