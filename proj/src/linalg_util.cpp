#include "coverph/linalg_util.hpp"

namespace coverph {

int matrix_rank(std::vector<std::vector<int>> m, const PrimeField& F) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && F.normalize(m[piv][col]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        int inv = F.inv(m[rank][col]);
        for (std::size_t c = col; c < cols; ++c) m[rank][c] = F.mul(m[rank][c], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || F.normalize(m[r][col]) == 0) continue;
            int t = F.neg(m[r][col]);
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] = F.add(m[r][c], F.mul(t, m[rank][c]));
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

std::optional<std::vector<int>> solve_linear(const std::vector<std::vector<int>>& A,
                                             const std::vector<int>& b, const PrimeField& F) {
    const std::size_t rows = A.size();
    const std::size_t cols = rows == 0 ? 0 : A[0].size();
    // Augmented row echelon.
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols + 1, 0));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] = F.normalize(A[r][c]);
        m[r][cols] = F.normalize(b[r]);
    }
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        int inv = F.inv(m[rank][col]);
        for (std::size_t c = col; c <= cols; ++c) m[rank][c] = F.mul(m[rank][c], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            int t = F.neg(m[r][col]);
            for (std::size_t c = col; c <= cols; ++c)
                m[r][c] = F.add(m[r][c], F.mul(t, m[rank][c]));
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (m[r][cols] != 0) return std::nullopt;
    std::vector<int> x(cols, 0);
    for (std::size_t r = 0; r < rank; ++r) x[static_cast<std::size_t>(pivot_col[r])] = m[r][cols];
    return x;
}

} // namespace coverph
