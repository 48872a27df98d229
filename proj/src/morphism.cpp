#include "coverph/morphism.hpp"

#include <string>

#include "coverph/errors.hpp"

namespace coverph {

void PersistenceMorphismMatrix::validate(const PrimeField& F) const {
    if (static_cast<int>(entries.size()) != rows())
        throw UsageError("morphism matrix: row count does not match codomain size");
    for (int r = 0; r < rows(); ++r) {
        if (static_cast<int>(entries[static_cast<std::size_t>(r)].size()) != cols())
            throw UsageError("morphism matrix: column count does not match domain size");
        for (int c = 0; c < cols(); ++c) {
            if (F.normalize(at(r, c)) == 0) continue;
            const Interval& beta = codomain.bar(r);
            const Interval& alpha = domain.bar(c);
            bool natural = beta.birth <= alpha.birth && alpha.birth < beta.death &&
                           beta.death <= alpha.death;
            if (!natural)
                throw UsageError("morphism matrix: naturality violated at row " + std::to_string(r) +
                                 ", col " + std::to_string(c));
        }
    }
}

BarcodeVector PersistenceMorphismMatrix::apply(const BarcodeVector& v, const PrimeField& F) const {
    if (v.basis_uid != domain.uid())
        throw UsageError("morphism apply: vector is not over the domain basis");
    std::map<int, long long> acc;
    for (const auto& [col, coeff] : v.coeffs)
        for (int row = 0; row < rows(); ++row)
            if (at(row, col) != 0) acc[row] += static_cast<long long>(at(row, col)) * coeff;
    std::map<int, int> coeffs;
    for (const auto& [row, c] : acc) coeffs[row] = F.normalize(c);
    return make_vector(codomain, std::move(coeffs), v.is_zero() ? 0 : v.assoc.birth, F);
}

PersistenceMorphismMatrix zero_morphism(BarcodeBasis domain, BarcodeBasis codomain) {
    PersistenceMorphismMatrix M;
    M.entries.assign(static_cast<std::size_t>(codomain.size()),
                     std::vector<int>(static_cast<std::size_t>(domain.size()), 0));
    M.domain = std::move(domain);
    M.codomain = std::move(codomain);
    return M;
}

PointwiseMatrix pointwise_matrix(const PersistenceMorphismMatrix& M, Filt r) {
    PointwiseMatrix out;
    out.row_idx = pointwise_basis(M.codomain, r);
    out.col_idx = pointwise_basis(M.domain, r);
    out.m.assign(out.row_idx.size(), std::vector<int>(out.col_idx.size(), 0));
    for (std::size_t i = 0; i < out.row_idx.size(); ++i)
        for (std::size_t j = 0; j < out.col_idx.size(); ++j)
            out.m[i][j] = M.at(out.row_idx[i], out.col_idx[j]);
    return out;
}

} // namespace coverph
