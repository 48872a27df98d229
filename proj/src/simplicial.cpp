#include "coverph/simplicial.hpp"

#include <algorithm>
#include <cmath>

#include "coverph/errors.hpp"

namespace coverph {

FilteredComplex FilteredComplex::build(std::vector<std::pair<Simplex, Filt>> simplices) {
    FilteredComplex X;
    int max_dim = -1;
    for (const auto& [s, f] : simplices) {
        if (s.empty()) throw UsageError("FilteredComplex: empty simplex");
        if (!std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end())
            throw UsageError("FilteredComplex: vertex tuple must be strictly increasing");
        max_dim = std::max(max_dim, static_cast<int>(s.size()) - 1);
        (void)f;
    }
    X.by_dim_.resize(static_cast<std::size_t>(max_dim + 1));
    X.index_.resize(static_cast<std::size_t>(max_dim + 1));
    for (auto& [s, f] : simplices)
        X.by_dim_[s.size() - 1].emplace_back(std::move(s), f);
    for (auto& level : X.by_dim_)
        std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second < b.second;
            return a.first < b.first;
        });
    for (std::size_t q = 0; q < X.by_dim_.size(); ++q)
        for (std::size_t i = 0; i < X.by_dim_[q].size(); ++i) {
            auto [it, fresh] = X.index_[q].emplace(X.by_dim_[q][i].first, static_cast<int>(i));
            if (!fresh) throw UsageError("FilteredComplex: duplicate simplex");
        }
    // Closure and monotonicity.
    for (std::size_t q = 1; q < X.by_dim_.size(); ++q)
        for (const auto& [s, f] : X.by_dim_[q]) {
            Simplex face(s.begin() + 1, s.end());
            for (std::size_t i = 0; i <= s.size() - 1; ++i) {
                int idx = X.index_of(face);
                if (idx < 0) throw UsageError("FilteredComplex: closure violated");
                if (X.filtration(static_cast<int>(q) - 1, idx) > f)
                    throw UsageError("FilteredComplex: filtration not monotone");
                if (i + 1 <= s.size() - 1) face[i] = s[i];
            }
        }
    return X;
}

int FilteredComplex::total_size() const {
    int n = 0;
    for (const auto& level : by_dim_) n += static_cast<int>(level.size());
    return n;
}

int FilteredComplex::index_of(const Simplex& s) const {
    const int q = static_cast<int>(s.size()) - 1;
    if (q < 0 || q > max_dim()) return -1;
    auto it = index_[static_cast<std::size_t>(q)].find(s);
    return it == index_[static_cast<std::size_t>(q)].end() ? -1 : it->second;
}

Filt FilteredComplex::filtration_of(const Simplex& s) const {
    int idx = index_of(s);
    if (idx < 0) throw UsageError("FilteredComplex: simplex not present");
    return filtration(static_cast<int>(s.size()) - 1, idx);
}

FilteredComplex vietoris_rips(const std::vector<std::vector<double>>& points, int max_dim,
                              Filt max_filt) {
    if (max_dim < 0) throw UsageError("vietoris_rips: max_dim must be >= 0");
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double acc = 0;
            if (points[static_cast<std::size_t>(i)].size() != points[static_cast<std::size_t>(j)].size())
                throw UsageError("vietoris_rips: inconsistent point dimensions");
            for (std::size_t d = 0; d < points[static_cast<std::size_t>(i)].size(); ++d) {
                double t = points[static_cast<std::size_t>(i)][d] - points[static_cast<std::size_t>(j)][d];
                acc += t * t;
            }
            dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::sqrt(acc);
        }

    std::vector<std::pair<Simplex, Filt>> out;
    for (int i = 0; i < n; ++i) out.push_back({Simplex{i}, 0.0});

    // Incremental clique expansion: extend each simplex by a larger vertex
    // within distance max_filt of all members.
    std::vector<std::pair<Simplex, Filt>> frontier = out;
    for (int q = 1; q <= max_dim && !frontier.empty(); ++q) {
        std::vector<std::pair<Simplex, Filt>> next;
        for (const auto& [s, f] : frontier)
            for (int v = s.back() + 1; v < n; ++v) {
                Filt nf = f;
                bool ok = true;
                for (int u : s) {
                    double d = dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
                    if (d > max_filt) {
                        ok = false;
                        break;
                    }
                    nf = std::max(nf, d);
                }
                if (!ok) continue;
                Simplex ns = s;
                ns.push_back(v);
                next.push_back({std::move(ns), nf});
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    if (out.empty()) return FilteredComplex();
    return FilteredComplex::build(std::move(out));
}

BarcodeBasis chain_basis(const FilteredComplex& X, int q) {
    std::vector<Interval> bars;
    for (int i = 0; i < X.count(q); ++i) bars.push_back(Interval{X.filtration(q, i), kInfFilt});
    return BarcodeBasis(std::move(bars));
}

PersistenceMorphismMatrix boundary_matrix(const FilteredComplex& X, int q, const PrimeField& F) {
    return boundary_matrix(X, q, F, chain_basis(X, q), chain_basis(X, q - 1));
}

PersistenceMorphismMatrix boundary_matrix(const FilteredComplex& X, int q, const PrimeField& F,
                                          BarcodeBasis domain, BarcodeBasis codomain) {
    if (q < 1) throw UsageError("boundary_matrix: q must be >= 1");
    if (domain.size() != X.count(q) || codomain.size() != X.count(q - 1))
        throw UsageError("boundary_matrix: bases do not match the complex");
    PersistenceMorphismMatrix M = zero_morphism(std::move(domain), std::move(codomain));
    for (int j = 0; j < X.count(q); ++j) {
        const Simplex& s = X.simplex(q, j);
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != i) face.push_back(s[t]);
            int row = X.index_of(face);
            if (row < 0) throw UsageError("boundary_matrix: closure violated");
            M.entries[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
                (i % 2 == 0) ? 1 : F.neg(1);
        }
    }
    return M;
}

} // namespace coverph
