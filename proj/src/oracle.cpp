#include "coverph/oracle.hpp"

#include <algorithm>
#include <map>

#include "coverph/errors.hpp"

namespace coverph {

std::vector<std::vector<Interval>> standard_reduction_ph(const FilteredComplex& K, int max_dim,
                                                         const PrimeField& F) {
    if (max_dim < 0) throw UsageError("standard_reduction_ph: max_dim must be >= 0");

    // Global filtration order: (value, dimension, vertex tuple).
    struct Cell {
        Filt filt;
        int dim;
        const Simplex* s;
    };
    std::vector<Cell> cells;
    for (int q = 0; q <= K.max_dim(); ++q)
        for (int i = 0; i < K.count(q); ++i) cells.push_back({K.filtration(q, i), q, &K.simplex(q, i)});
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.filt != b.filt) return a.filt < b.filt;
        if (a.dim != b.dim) return a.dim < b.dim;
        return *a.s < *b.s;
    });
    std::map<Simplex, int> pos;
    for (std::size_t i = 0; i < cells.size(); ++i) pos[*cells[i].s] = static_cast<int>(i);

    const int n = static_cast<int>(cells.size());
    // Sparse boundary columns over the global order.
    std::vector<std::map<int, int>> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Simplex& s = *cells[static_cast<std::size_t>(j)].s;
        if (s.size() == 1) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex face;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != i) face.push_back(s[t]);
            col[static_cast<std::size_t>(j)][pos.at(face)] = (i % 2 == 0) ? 1 : F.neg(1);
        }
    }

    std::vector<int> pair_of(static_cast<std::size_t>(n), -1); // creator index -> destroyer
    std::map<int, int> pivot;                                  // low row -> column
    for (int j = 0; j < n; ++j) {
        auto& c = col[static_cast<std::size_t>(j)];
        while (!c.empty()) {
            int low = c.rbegin()->first;
            auto it = pivot.find(low);
            if (it == pivot.end()) {
                pivot[low] = j;
                pair_of[static_cast<std::size_t>(low)] = j;
                break;
            }
            const auto& ci = col[static_cast<std::size_t>(it->second)];
            int t = F.neg(F.div(c.rbegin()->second, ci.rbegin()->second));
            for (const auto& [r, v] : ci) {
                int nv = F.add(c.count(r) ? c.at(r) : 0, F.mul(t, v));
                if (nv == 0)
                    c.erase(r);
                else
                    c[r] = nv;
            }
        }
    }

    std::vector<std::vector<Interval>> out(static_cast<std::size_t>(max_dim + 1));
    for (int j = 0; j < n; ++j) {
        if (!col[static_cast<std::size_t>(j)].empty()) continue; // not a creator
        const int q = cells[static_cast<std::size_t>(j)].dim;
        if (q > max_dim) continue;
        Filt birth = cells[static_cast<std::size_t>(j)].filt;
        int d = pair_of[static_cast<std::size_t>(j)];
        Filt death = d < 0 ? kInfFilt : cells[static_cast<std::size_t>(d)].filt;
        if (death <= birth) continue;
        out[static_cast<std::size_t>(q)].push_back(Interval{birth, death});
    }
    for (auto& bars : out) std::sort(bars.begin(), bars.end(), bar_less);
    return out;
}

} // namespace coverph
