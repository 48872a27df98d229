#pragma once

#include <vector>

#include "coverph/barcode.hpp"
#include "coverph/barcode_vector.hpp"
#include "coverph/field.hpp"

namespace coverph {

// The matrix k_{β,α} of a natural morphism f between persistence modules with
// chosen barcode bases: f(α) = 1_{birth α}(Σ_β k_{β,α} β). Rows index the
// codomain, columns the domain.
struct PersistenceMorphismMatrix {
    BarcodeBasis domain;   // A
    BarcodeBasis codomain; // B
    std::vector<std::vector<int>> entries; // entries[row][col]

    int rows() const { return codomain.size(); }
    int cols() const { return domain.size(); }
    int at(int row, int col) const { return entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]; }

    // Naturality: k_{β,α} != 0 requires birth β <= birth α < death β and
    // death β <= death α. Throws UsageError otherwise.
    void validate(const PrimeField& F) const;

    // f applied to a vector over the domain (raw matrix-vector product plus
    // the ⊞ step bookkeeping).
    BarcodeVector apply(const BarcodeVector& v, const PrimeField& F) const;
};

PersistenceMorphismMatrix zero_morphism(BarcodeBasis domain, BarcodeBasis codomain);

// Dense restriction of the matrix to generators alive at r; row_idx/col_idx
// name the surviving generators in basis order.
struct PointwiseMatrix {
    std::vector<int> row_idx, col_idx;
    std::vector<std::vector<int>> m; // [row][col]
};
PointwiseMatrix pointwise_matrix(const PersistenceMorphismMatrix& M, Filt r);

} // namespace coverph
