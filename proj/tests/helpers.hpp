#pragma once

// Shared helpers for the unit/property tests and the acceptance suite:
// random generators for bases and natural morphism matrices, plus the
// independent brute-force verification of image_kernel output.

#include <random>
#include <vector>

#include "coverph/cover.hpp"
#include "coverph/image_kernel.hpp"
#include "coverph/linalg_util.hpp"

namespace coverph::testutil {

// The 14-point "split circle" cloud: two square loops of side 1 sharing the
// middle column x = 1, where the shared column is broken by a 0.6 gap
// between (1,0.2) and (1,0.8).
inline std::vector<std::vector<double>> circle_split_points() {
    return {{0, 0},   {0, 0.5}, {0, 1},   {0.5, 0}, {0.5, 1}, {1, 0},   {1, 0.2},
            {1, 0.8}, {1, 1},   {1.5, 0}, {1.5, 1}, {2, 0},   {2, 0.5}, {2, 1}};
}

inline BarcodeBasis random_basis(std::mt19937& rng, int max_bars, double inf_prob = 0.15) {
    std::uniform_int_distribution<int> count(1, max_bars);
    std::uniform_int_distribution<int> birth(0, 8);
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Interval> bars;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Filt b = birth(rng) / 2.0;
        Filt d = coin(rng) < inf_prob ? kInfFilt : b + len(rng) / 2.0;
        bars.push_back(Interval{b, d});
    }
    return make_sorted_basis(std::move(bars));
}

// A random matrix respecting the naturality constraints for the given bases.
inline PersistenceMorphismMatrix random_natural_matrix(std::mt19937& rng, BarcodeBasis domain,
                                                       BarcodeBasis codomain, const PrimeField& F,
                                                       double density = 0.5) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> val(1, F.p() - 1);
    PersistenceMorphismMatrix M;
    M.entries.assign(static_cast<std::size_t>(codomain.size()),
                     std::vector<int>(static_cast<std::size_t>(domain.size()), 0));
    for (int r = 0; r < codomain.size(); ++r)
        for (int c = 0; c < domain.size(); ++c) {
            const Interval& beta = codomain.bar(r);
            const Interval& alpha = domain.bar(c);
            bool allowed = beta.birth <= alpha.birth && alpha.birth < beta.death &&
                           beta.death <= alpha.death;
            if (allowed && coin(rng) < density) M.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = val(rng);
        }
    M.domain = std::move(domain);
    M.codomain = std::move(codomain);
    return M;
}

// Verifies, at every critical value, that the image/kernel output of
// image_kernel agrees with brute-force Gaussian elimination on the pointwise
// matrix: counts (rank-nullity), containment and independence. Pure
// verification code path: shares nothing with the implementation under test
// beyond the dense rank helper.
inline bool verify_image_kernel_pointwise(const PersistenceMorphismMatrix& M,
                                          const ImageKernelResult& ik, const PrimeField& F) {
    for (Filt r : critical_values({&M.domain, &M.codomain})) {
        if (!(r < kInfFilt)) continue;
        PointwiseMatrix Mr = pointwise_matrix(M, r);
        const int rank = matrix_rank(Mr.m, F);
        const int alive_cols = static_cast<int>(Mr.col_idx.size());

        // Alive image vectors, densified over the alive codomain rows.
        std::vector<std::vector<int>> img_cols;
        for (const BarcodeVector& v : ik.image) {
            if (!v.assoc.alive_at(r)) continue;
            std::map<int, int> ev = evaluate_at(v, M.codomain, r);
            std::vector<int> col(Mr.row_idx.size(), 0);
            for (std::size_t i = 0; i < Mr.row_idx.size(); ++i) {
                auto it = ev.find(Mr.row_idx[i]);
                if (it != ev.end()) col[i] = it->second;
            }
            img_cols.push_back(std::move(col));
        }
        if (static_cast<int>(img_cols.size()) != rank) return false;
        // Independent and inside the column space.
        std::vector<std::vector<int>> stacked(Mr.row_idx.size());
        for (std::size_t i = 0; i < Mr.row_idx.size(); ++i) {
            stacked[i] = Mr.m[i];
            for (const auto& col : img_cols) stacked[i].push_back(col[i]);
        }
        if (!Mr.row_idx.empty() && matrix_rank(stacked, F) != rank) return false;
        std::vector<std::vector<int>> img_only(Mr.row_idx.size(), std::vector<int>(img_cols.size(), 0));
        for (std::size_t i = 0; i < Mr.row_idx.size(); ++i)
            for (std::size_t j = 0; j < img_cols.size(); ++j) img_only[i][j] = img_cols[j][i];
        if (!img_cols.empty() &&
            matrix_rank(img_only, F) != static_cast<int>(img_cols.size())) return false;

        // Alive kernel vectors: in the null space, independent, right count.
        std::vector<std::vector<int>> ker_cols;
        for (const BarcodeVector& v : ik.kernel) {
            if (!v.assoc.alive_at(r)) continue;
            std::map<int, int> ev = evaluate_at(v, M.domain, r);
            std::vector<int> col(Mr.col_idx.size(), 0);
            for (std::size_t i = 0; i < Mr.col_idx.size(); ++i) {
                auto it = ev.find(Mr.col_idx[i]);
                if (it != ev.end()) col[i] = it->second;
            }
            for (std::size_t row = 0; row < Mr.row_idx.size(); ++row) {
                long long acc = 0;
                for (std::size_t j = 0; j < col.size(); ++j)
                    acc += static_cast<long long>(Mr.m[row][j]) * col[j];
                if (F.normalize(acc) != 0) return false;
            }
            ker_cols.push_back(std::move(col));
        }
        if (static_cast<int>(ker_cols.size()) != alive_cols - rank) return false;
        std::vector<std::vector<int>> ker_mat(Mr.col_idx.size(), std::vector<int>(ker_cols.size(), 0));
        for (std::size_t i = 0; i < Mr.col_idx.size(); ++i)
            for (std::size_t j = 0; j < ker_cols.size(); ++j) ker_mat[i][j] = ker_cols[j][i];
        if (!ker_cols.empty() &&
            matrix_rank(ker_mat, F) != static_cast<int>(ker_cols.size())) return false;
    }
    return true;
}

// A random point cloud, its Vietoris-Rips complex, and a grid cover whose
// overlap (>= 2 * max_filt) guarantees every simplex fits in some patch.
struct RandomCoveredComplex {
    std::vector<std::vector<double>> points;
    FilteredComplex X;
    CoverAssignment cover;
    Nerve N;
    Filt max_filt;
};

inline RandomCoveredComplex random_covered_complex(std::mt19937& rng, int max_points,
                                                   int max_dim, std::vector<int> divisions) {
    std::uniform_int_distribution<int> npts(4, max_points);
    std::uniform_real_distribution<double> coord(0.0, 4.0);
    RandomCoveredComplex out;
    const int n = npts(rng);
    for (int i = 0; i < n; ++i) out.points.push_back({coord(rng), coord(rng)});
    out.max_filt = 1.0;
    out.X = vietoris_rips(out.points, max_dim, out.max_filt);
    out.cover = cubical_cover(out.X, out.points, divisions, 2 * out.max_filt + 0.1);
    out.N = nerve(out.cover);
    return out;
}

// Exactness of the augmented Cech row in degree q, checked pointwise at
// every critical value by brute-force ranks:
//   0 <- S_q(K) <- C_0 <- C_1 <- ... with C_k = oplus_{sigma in N_k} S_q(U_sigma):
// the augmentation is surjective and rank(D_k) + rank(D_{k+1}) = dim C_k.
inline bool verify_cech_row_exact(const CoverAssignment& cover, const Nerve& N, int q,
                                  const PrimeField& F) {
    const int kmax = N.max_dim();
    if (kmax < 0) return cover.global.count(q) == 0;
    std::vector<PersistenceMorphismMatrix> D;
    for (int k = 0; k <= kmax; ++k) D.push_back(cech_differential(cover, N, k, q, F));

    std::vector<const BarcodeBasis*> bases;
    for (const auto& M : D) bases.push_back(&M.domain);
    bases.push_back(&D[0].codomain);
    std::vector<Filt> crit = critical_values(std::vector<const BarcodeBasis*>(bases));
    for (Filt r : crit) {
        if (!(r < kInfFilt)) continue;
        std::vector<int> rank(static_cast<std::size_t>(kmax + 2), 0);
        std::vector<int> dim(static_cast<std::size_t>(kmax + 1), 0);
        for (int k = 0; k <= kmax; ++k) {
            PointwiseMatrix P = pointwise_matrix(D[static_cast<std::size_t>(k)], r);
            rank[static_cast<std::size_t>(k)] = matrix_rank(P.m, F);
            dim[static_cast<std::size_t>(k)] = static_cast<int>(P.col_idx.size());
        }
        int global_dim = 0;
        for (int i = 0; i < D[0].codomain.size(); ++i)
            if (D[0].codomain.bar(i).alive_at(r)) ++global_dim;
        if (rank[0] != global_dim) return false;
        for (int k = 0; k <= kmax; ++k)
            if (rank[static_cast<std::size_t>(k)] + rank[static_cast<std::size_t>(k + 1)] !=
                dim[static_cast<std::size_t>(k)])
                return false;
    }
    return true;
}

} // namespace coverph::testutil
