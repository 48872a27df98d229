#include "coverph/cover.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "coverph/errors.hpp"

namespace coverph {

bool Box::contains(const std::vector<double>& pt) const {
    if (pt.size() != lo.size()) return false;
    for (std::size_t d = 0; d < lo.size(); ++d)
        if (pt[d] < lo[d] || pt[d] > hi[d]) return false;
    return true;
}

namespace {

// All simplices of X with their filtration values.
std::vector<std::pair<Simplex, Filt>> all_simplices(const FilteredComplex& X) {
    std::vector<std::pair<Simplex, Filt>> out;
    for (int q = 0; q <= X.max_dim(); ++q)
        for (int i = 0; i < X.count(q); ++i) out.push_back({X.simplex(q, i), X.filtration(q, i)});
    return out;
}

void check_union_covers(const FilteredComplex& X, const std::vector<FilteredComplex>& patches) {
    for (int q = 0; q <= X.max_dim(); ++q)
        for (int i = 0; i < X.count(q); ++i) {
            const Simplex& s = X.simplex(q, i);
            bool found = false;
            for (const FilteredComplex& U : patches)
                if (U.contains(s)) {
                    found = true;
                    break;
                }
            if (!found) {
                std::string msg = "cover violation: simplex {";
                for (std::size_t t = 0; t < s.size(); ++t)
                    msg += (t ? "," : "") + std::to_string(s[static_cast<std::size_t>(t)]);
                msg += "} lies in no patch";
                throw CoverViolationError(msg);
            }
        }
}

} // namespace

CoverAssignment cubical_cover(const FilteredComplex& X,
                              const std::vector<std::vector<double>>& points,
                              const std::vector<int>& divisions, double overlap) {
    if (divisions.empty()) throw UsageError("cubical_cover: need at least one axis");
    for (int d : divisions)
        if (d < 1) throw UsageError("cubical_cover: divisions must be >= 1 per axis");
    if (overlap < 0) throw UsageError("cubical_cover: overlap must be >= 0");
    const std::size_t dims = divisions.size();
    for (const auto& pt : points)
        if (pt.size() != dims) throw UsageError("cubical_cover: point/axis dimension mismatch");

    std::vector<double> mn(dims, 0.0), mx(dims, 0.0);
    if (!points.empty()) {
        mn = mx = points[0];
        for (const auto& pt : points)
            for (std::size_t d = 0; d < dims; ++d) {
                mn[d] = std::min(mn[d], pt[d]);
                mx[d] = std::max(mx[d], pt[d]);
            }
    }

    // Grid boxes in row-major order (last axis fastest), each enlarged by
    // overlap/2 per side.
    CoverAssignment cover;
    cover.global = X;
    long long total = 1;
    for (int d : divisions) total *= d;
    for (long long cell = 0; cell < total; ++cell) {
        // Row-major decode, last axis fastest.
        std::vector<int> idx(dims, 0);
        long long rest = cell;
        for (std::size_t d = dims; d-- > 0;) {
            idx[d] = static_cast<int>(rest % divisions[d]);
            rest /= divisions[d];
        }
        Box b;
        b.lo.resize(dims);
        b.hi.resize(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            double w = (mx[d] - mn[d]) / divisions[d];
            b.lo[d] = mn[d] + idx[d] * w - overlap / 2;
            b.hi[d] = mn[d] + (idx[d] + 1) * w + overlap / 2;
        }
        cover.boxes.push_back(std::move(b));
    }

    for (const Box& b : cover.boxes) {
        std::vector<std::pair<Simplex, Filt>> in_patch;
        for (const auto& [s, f] : all_simplices(X)) {
            bool ok = true;
            for (int v : s) {
                if (v < 0 || static_cast<std::size_t>(v) >= points.size() ||
                    !b.contains(points[static_cast<std::size_t>(v)])) {
                    ok = false;
                    break;
                }
            }
            if (ok) in_patch.push_back({s, f});
        }
        cover.patches.push_back(in_patch.empty() ? FilteredComplex()
                                                 : FilteredComplex::build(std::move(in_patch)));
    }
    check_union_covers(X, cover.patches);
    return cover;
}

CoverAssignment explicit_cover(const FilteredComplex& X,
                               const std::vector<std::vector<Simplex>>& patch_simplices) {
    CoverAssignment cover;
    cover.global = X;
    for (const auto& list : patch_simplices) {
        std::vector<std::pair<Simplex, Filt>> in_patch;
        for (const Simplex& s : list) in_patch.push_back({s, X.filtration_of(s)});
        cover.patches.push_back(in_patch.empty() ? FilteredComplex()
                                                 : FilteredComplex::build(std::move(in_patch)));
    }
    check_union_covers(X, cover.patches);
    return cover;
}

int Nerve::index_of(const std::vector<int>& sigma) const {
    const int k = static_cast<int>(sigma.size()) - 1;
    if (k < 0 || k > max_dim()) return -1;
    const auto& level = simplices[static_cast<std::size_t>(k)];
    auto it = std::lower_bound(level.begin(), level.end(), sigma);
    if (it == level.end() || *it != sigma) return -1;
    return static_cast<int>(it - level.begin());
}

Nerve nerve(const CoverAssignment& cover, int max_nerve_dim) {
    const int m = static_cast<int>(cover.patches.size());
    if (max_nerve_dim < 0) max_nerve_dim = m - 1;

    // Patches are closed subcomplexes, so U_sigma is nonempty iff the
    // patches of sigma share a vertex.
    std::vector<std::set<int>> verts(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < cover.patches[static_cast<std::size_t>(i)].count(0); ++j)
            verts[static_cast<std::size_t>(i)].insert(cover.patches[static_cast<std::size_t>(i)].simplex(0, j)[0]);

    Nerve N;
    std::vector<std::pair<std::vector<int>, std::set<int>>> frontier;
    std::vector<std::vector<int>> level0;
    for (int i = 0; i < m; ++i)
        if (!verts[static_cast<std::size_t>(i)].empty()) {
            level0.push_back({i});
            frontier.push_back({{i}, verts[static_cast<std::size_t>(i)]});
        }
    if (level0.empty()) return N;
    N.simplices.push_back(std::move(level0));

    for (int k = 1; k <= max_nerve_dim && !frontier.empty(); ++k) {
        std::vector<std::pair<std::vector<int>, std::set<int>>> next;
        std::vector<std::vector<int>> level;
        for (const auto& [sigma, common] : frontier)
            for (int j = sigma.back() + 1; j < m; ++j) {
                std::set<int> inter;
                std::set_intersection(common.begin(), common.end(),
                                      verts[static_cast<std::size_t>(j)].begin(),
                                      verts[static_cast<std::size_t>(j)].end(),
                                      std::inserter(inter, inter.begin()));
                if (inter.empty()) continue;
                std::vector<int> tau = sigma;
                tau.push_back(j);
                level.push_back(tau);
                next.push_back({std::move(tau), std::move(inter)});
            }
        if (level.empty()) break;
        N.simplices.push_back(std::move(level));
        frontier = std::move(next);
    }
    return N;
}

FilteredComplex intersection_complex(const CoverAssignment& cover, const std::vector<int>& sigma) {
    if (sigma.empty() || !std::is_sorted(sigma.begin(), sigma.end()) ||
        std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
        throw UsageError("intersection_complex: sigma must be a strictly increasing index set");
    for (int i : sigma)
        if (i < 0 || static_cast<std::size_t>(i) >= cover.patches.size())
            throw UsageError("intersection_complex: patch index out of range");
    const FilteredComplex& first = cover.patches[static_cast<std::size_t>(sigma[0])];
    std::vector<std::pair<Simplex, Filt>> kept;
    for (int q = 0; q <= first.max_dim(); ++q)
        for (int i = 0; i < first.count(q); ++i) {
            const Simplex& s = first.simplex(q, i);
            bool in_all = true;
            for (std::size_t t = 1; t < sigma.size(); ++t)
                if (!cover.patches[static_cast<std::size_t>(sigma[t])].contains(s)) {
                    in_all = false;
                    break;
                }
            if (in_all) kept.push_back({s, first.filtration(q, i)});
        }
    return kept.empty() ? FilteredComplex() : FilteredComplex::build(std::move(kept));
}

FilteredComplex restrict(const CoverAssignment& cover, const Nerve& nerve,
                         const std::vector<int>& sigma) {
    if (!nerve.contains(sigma)) throw UsageError("restrict: sigma is not a nerve simplex");
    return intersection_complex(cover, sigma);
}

CechModule cech_module(const CoverAssignment& cover, const Nerve& nerve, int k, int q) {
    CechModule mod;
    std::vector<Interval> bars;
    for (int i = 0; i < nerve.count(k); ++i) {
        FilteredComplex piece = intersection_complex(cover, nerve.simplex(k, i));
        mod.offset.push_back(static_cast<int>(bars.size()));
        for (int j = 0; j < piece.count(q); ++j)
            bars.push_back(Interval{piece.filtration(q, j), kInfFilt});
        mod.pieces.push_back(std::move(piece));
    }
    mod.basis = BarcodeBasis(std::move(bars));
    return mod;
}

PersistenceMorphismMatrix cech_differential(const CoverAssignment& cover, const Nerve& nerve,
                                            int k, int q, const CechModule& from,
                                            const CechModule& to, const PrimeField& F) {
    if (k < 1) throw UsageError("cech_differential: this overload needs k >= 1");
    PersistenceMorphismMatrix M = zero_morphism(from.basis, to.basis);
    for (int si = 0; si < nerve.count(k); ++si) {
        const std::vector<int>& sigma = nerve.simplex(k, si);
        const FilteredComplex& U = from.pieces[static_cast<std::size_t>(si)];
        for (std::size_t j = 0; j < sigma.size(); ++j) {
            std::vector<int> tau;
            for (std::size_t t = 0; t < sigma.size(); ++t)
                if (t != j) tau.push_back(sigma[t]);
            int ti = nerve.index_of(tau);
            if (ti < 0) throw InternalConsistencyError("cech_differential: nerve not closed");
            const FilteredComplex& V = to.pieces[static_cast<std::size_t>(ti)];
            int sign = (j % 2 == 0) ? 1 : F.neg(1);
            for (int i = 0; i < U.count(q); ++i) {
                int row_local = V.index_of(U.simplex(q, i));
                if (row_local < 0)
                    throw InternalConsistencyError("cech_differential: facet misses a simplex");
                M.entries[static_cast<std::size_t>(to.offset[static_cast<std::size_t>(ti)] + row_local)]
                         [static_cast<std::size_t>(from.offset[static_cast<std::size_t>(si)] + i)] = sign;
            }
        }
    }
    return M;
}

PersistenceMorphismMatrix cech_differential(const CoverAssignment& cover, const Nerve& nerve,
                                            int k, int q, const PrimeField& F) {
    CechModule from = cech_module(cover, nerve, k, q);
    if (k >= 1) {
        CechModule to = cech_module(cover, nerve, k - 1, q);
        return cech_differential(cover, nerve, k, q, from, to, F);
    }
    // Augmentation onto S_q(global): sum the components.
    PersistenceMorphismMatrix M = zero_morphism(from.basis, chain_basis(cover.global, q));
    for (int si = 0; si < nerve.count(0); ++si) {
        const FilteredComplex& U = from.pieces[static_cast<std::size_t>(si)];
        for (int i = 0; i < U.count(q); ++i) {
            int row = cover.global.index_of(U.simplex(q, i));
            if (row < 0) throw InternalConsistencyError("cech_differential: patch not a subcomplex");
            M.entries[static_cast<std::size_t>(row)]
                     [static_cast<std::size_t>(from.offset[static_cast<std::size_t>(si)] + i)] = 1;
        }
    }
    return M;
}

} // namespace coverph
