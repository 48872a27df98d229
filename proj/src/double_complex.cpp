#include "coverph/double_complex.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>

#include "coverph/errors.hpp"
#include "coverph/linalg_util.hpp"
#include "coverph/runtime.hpp"
#include "coverph/simplicial.hpp"

namespace coverph {

void chain_axpy(Chain& dst, int t, const Chain& src, const PrimeField& F) {
    if (F.normalize(t) == 0) return;
    for (const auto& [i, c] : src) {
        int v = F.add(dst.count(i) ? dst.at(i) : 0, F.mul(t, c));
        if (v == 0)
            dst.erase(i);
        else
            dst[i] = v;
    }
}

void total_axpy(TotalChain& dst, int t, const TotalChain& src, const PrimeField& F) {
    if (dst.n != src.n && !dst.is_zero() && !src.is_zero())
        throw UsageError("total_axpy: mixed total degrees");
    if (dst.is_zero()) dst.n = src.n;
    for (const auto& [p, ch] : src.comp) {
        chain_axpy(dst.comp[p], t, ch, F);
        if (dst.comp[p].empty()) dst.comp.erase(p);
    }
}

DoubleComplex::DoubleComplex(const CoverAssignment& cover, const Nerve& nerve,
                             const PrimeField& F)
    : cover_(&cover), nerve_(&nerve), F_(F) {
    pmax_ = nerve.max_dim();
    qmax_ = cover.global.max_dim();
    if (pmax_ < 0 || qmax_ < 0) return; // empty cover or empty complex

    mods_.resize(static_cast<std::size_t>(pmax_) + 1);
    vcols_.resize(static_cast<std::size_t>(pmax_) + 1);
    hcols_.resize(static_cast<std::size_t>(pmax_) + 1);
    for (int p = 0; p <= pmax_; ++p) {
        mods_[static_cast<std::size_t>(p)].reserve(static_cast<std::size_t>(qmax_) + 1);
        for (int q = 0; q <= qmax_; ++q)
            mods_[static_cast<std::size_t>(p)].push_back(cech_module(cover, nerve, p, q));
        vcols_[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(qmax_) + 1);
        hcols_[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(qmax_) + 1);
    }

    for (int p = 0; p <= pmax_; ++p) {
        for (int q = 0; q <= qmax_; ++q) {
            const CechModule& m = mod(p, q);
            SparseCols& vc = vcols_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            SparseCols& hc = hcols_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            vc.resize(static_cast<std::size_t>(m.basis.size()));
            hc.resize(static_cast<std::size_t>(m.basis.size()));
            const int nblocks = static_cast<int>(m.pieces.size());
            for (int b = 0; b < nblocks; ++b) {
                const FilteredComplex& U = m.pieces[static_cast<std::size_t>(b)];
                for (int i = 0; i < U.count(q); ++i) {
                    const int col = m.offset[static_cast<std::size_t>(b)] + i;
                    const Simplex& s = U.simplex(q, i);
                    // Vertical boundary within the same block.
                    if (q >= 1) {
                        const CechModule& below = mod(p, q - 1);
                        Simplex face(s.begin() + 1, s.end());
                        for (int v = 0; v <= q; ++v) {
                            int row = below.offset[static_cast<std::size_t>(b)] +
                                      below.pieces[static_cast<std::size_t>(b)].index_of(face);
                            vc[static_cast<std::size_t>(col)].emplace_back(
                                row, (v % 2 == 0) ? 1 : F_.neg(1));
                            if (v < q) face[static_cast<std::size_t>(v)] = s[static_cast<std::size_t>(v)];
                        }
                    }
                    // Horizontal: alternating facets of σ, with the (−1)^q twist.
                    if (p >= 1) {
                        const CechModule& left = mod(p - 1, q);
                        const std::vector<int>& sigma = nerve.simplex(p, b);
                        std::vector<int> tau(sigma.begin() + 1, sigma.end());
                        for (int j = 0; j <= p; ++j) {
                            int ti = nerve.index_of(tau);
                            if (ti < 0)
                                throw InternalConsistencyError(
                                    "double complex: nerve facet missing");
                            int row = left.offset[static_cast<std::size_t>(ti)] +
                                      left.pieces[static_cast<std::size_t>(ti)].index_of(s);
                            int sign = ((j + q) % 2 == 0) ? 1 : F_.neg(1);
                            hc[static_cast<std::size_t>(col)].emplace_back(row, sign);
                            if (j < p) tau[static_cast<std::size_t>(j)] = sigma[static_cast<std::size_t>(j)];
                        }
                    }
                }
            }
        }
    }
}

const CechModule& DoubleComplex::mod(int p, int q) const {
    static const CechModule kEmpty;
    if (!in_range(p, q)) return kEmpty;
    return mods_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
}

namespace {

Chain apply_sparse(const std::vector<std::vector<std::pair<int, int>>>& cols, const Chain& x,
                   const PrimeField& F) {
    Chain out;
    for (const auto& [col, c] : x) {
        for (const auto& [row, e] : cols[static_cast<std::size_t>(col)]) {
            int v = F.add(out.count(row) ? out.at(row) : 0, F.mul(c, e));
            if (v == 0)
                out.erase(row);
            else
                out[row] = v;
        }
    }
    return out;
}

} // namespace

Chain DoubleComplex::vertical(int p, int q, const Chain& x) const {
    if (x.empty() || q < 1 || !in_range(p, q)) return {};
    return apply_sparse(vcols_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)], x, F_);
}

Chain DoubleComplex::horizontal(int p, int q, const Chain& x) const {
    if (x.empty() || p < 1 || !in_range(p, q)) return {};
    return apply_sparse(hcols_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)], x, F_);
}

Chain DoubleComplex::dtot_component(const TotalChain& x, int p) const {
    // Target position (p, x.n - 1 - p): d of the column-p component plus δ̄ of
    // the column-(p+1) component.
    const int q = x.n - 1 - p;
    Chain out;
    if (const Chain* same = x.at(p)) {
        Chain d = vertical(p, q + 1, *same);
        chain_axpy(out, 1, d, F_);
    }
    if (const Chain* right = x.at(p + 1)) {
        Chain h = horizontal(p + 1, q, *right);
        chain_axpy(out, 1, h, F_);
    }
    return out;
}

TotalChain DoubleComplex::dtot(const TotalChain& x) const {
    TotalChain out;
    out.n = x.n - 1;
    for (int p = 0; p <= pmax_; ++p) {
        Chain c = dtot_component(x, p);
        if (!c.empty()) out.comp[p] = std::move(c);
    }
    return out;
}

namespace {

// Turns the homology representatives of one local block into interval
// representatives: each finite bar's chain is corrected by older generators
// still alive at its death so that, at the death value, the chain is exactly
// a vertical boundary (and not merely dependent on the surviving classes).
// Later lifting solves rely on this: a chain supported on dead generators is
// then killable with boundary columns alone.
void make_interval_reps(std::vector<LocalGen>& e1, const std::vector<LocalGen>& im,
                        const PrimeField& F) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < e1.size(); ++i)
        if (e1[i].bar.death < kInfFilt) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (e1[a].bar.death != e1[b].bar.death) return e1[a].bar.death < e1[b].bar.death;
        return a < b;
    });
    for (std::size_t i : order) {
        const Filt d = e1[i].bar.death;
        std::vector<const Chain*> cols;
        std::vector<std::size_t> gen_cols;
        for (const LocalGen& g : im)
            if (g.bar.alive_at(d)) cols.push_back(&g.chain);
        const std::size_t nim = cols.size();
        for (std::size_t j = 0; j < e1.size(); ++j) {
            if (j == i || !e1[j].bar.alive_at(d) || e1[j].bar.birth > e1[i].bar.birth) continue;
            cols.push_back(&e1[j].chain);
            gen_cols.push_back(j);
        }
        std::set<int> rowset;
        for (const auto& [r, c] : e1[i].chain) rowset.insert(r);
        for (const Chain* c : cols)
            for (const auto& [r, v] : *c) rowset.insert(r);
        std::map<int, int> dense_row;
        int nr = 0;
        for (int r : rowset) dense_row[r] = nr++;
        std::vector<std::vector<int>> A(static_cast<std::size_t>(nr),
                                        std::vector<int>(cols.size(), 0));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [r, v] : *cols[j])
                A[static_cast<std::size_t>(dense_row.at(r))][j] = v;
        std::vector<int> b(static_cast<std::size_t>(nr), 0);
        for (const auto& [r, v] : e1[i].chain) b[static_cast<std::size_t>(dense_row.at(r))] = v;
        auto sol = solve_linear(A, b, F);
        if (!sol)
            throw InternalConsistencyError(
                "local homology representative does not die into the boundary space");
        for (std::size_t j = 0; j < gen_cols.size(); ++j)
            if ((*sol)[nim + j] != 0)
                chain_axpy(e1[i].chain, F.neg((*sol)[nim + j]), e1[gen_cols[j]].chain, F);
    }
}

} // namespace

ZeroPageResult zero_page(const DoubleComplex& dc, int workers) {
    ZeroPageResult out;
    out.at.assign(static_cast<std::size_t>(std::max(dc.pmax() + 1, 0)),
                  std::vector<ZeroPageEntry>(static_cast<std::size_t>(std::max(dc.qmax() + 1, 0))));
    if (dc.pmax() < 0 || dc.qmax() < 0) return out;

    struct Task {
        int p, block;
    };
    std::vector<Task> tasks;
    for (int p = 0; p <= dc.pmax(); ++p)
        for (int b = 0; b < static_cast<int>(dc.mod(p, 0).pieces.size()); ++b)
            tasks.push_back({p, b});

    struct TaskResult {
        std::vector<std::vector<LocalGen>> e1; // [q]
        std::vector<std::vector<LocalGen>> im; // [q]
        double seconds = 0;
    };

    const PrimeField& F = dc.field();
    auto run_task = [&](int ti) -> TaskResult {
        const auto& [p, block] = tasks[static_cast<std::size_t>(ti)];
        const FilteredComplex& U = dc.mod(p, 0).pieces[static_cast<std::size_t>(block)];
        TaskResult res;
        res.e1.resize(static_cast<std::size_t>(dc.qmax()) + 1);
        res.im.resize(static_cast<std::size_t>(dc.qmax()) + 1);
        const int m = U.max_dim();
        if (m < 0) return res;

        std::vector<BarcodeBasis> modules;
        for (int q = 0; q <= m; ++q) modules.push_back(chain_basis(U, q));
        std::vector<PersistenceMorphismMatrix> diffs;
        for (int q = 1; q <= m; ++q)
            diffs.push_back(boundary_matrix(U, q, F, modules[static_cast<std::size_t>(q)],
                                            modules[static_cast<std::size_t>(q - 1)]));

        auto t0 = std::chrono::steady_clock::now();
        ChainHomologyResult ch = chain_homology(modules, diffs, F);
        auto t1 = std::chrono::steady_clock::now();
        res.seconds = std::chrono::duration<double>(t1 - t0).count();

        for (int q = 0; q <= m; ++q) {
            const int off = dc.mod(p, q).offset[static_cast<std::size_t>(block)];
            const QuotientResult& hq = ch.homology[static_cast<std::size_t>(q)];
            for (int i = 0; i < hq.basis.size(); ++i) {
                LocalGen g;
                g.bar = hq.basis.bar(i);
                g.block = block;
                for (const auto& [j, c] : hq.reps[static_cast<std::size_t>(i)].coeffs)
                    g.chain[off + j] = c;
                res.e1[static_cast<std::size_t>(q)].push_back(std::move(g));
            }
            if (q < m) {
                const int off_up = dc.mod(p, q + 1).offset[static_cast<std::size_t>(block)];
                const ImageKernelResult& bd = ch.boundary_data[static_cast<std::size_t>(q)];
                for (std::size_t i = 0; i < bd.image.size(); ++i) {
                    LocalGen g;
                    g.bar = bd.image[i].assoc;
                    g.block = block;
                    for (const auto& [j, c] : bd.image[i].coeffs) g.chain[off + j] = c;
                    for (const auto& [j, c] : bd.preimage[i].coeffs) g.preimage[off_up + j] = c;
                    res.im[static_cast<std::size_t>(q)].push_back(std::move(g));
                }
            }
        }
        for (int q = 0; q <= m; ++q)
            make_interval_reps(res.e1[static_cast<std::size_t>(q)],
                               res.im[static_cast<std::size_t>(q)], F);
        return res;
    };

    std::vector<TaskResult> results = parallel_map_deterministic<TaskResult>(
        static_cast<int>(tasks.size()), workers, run_task);

    out.task_seconds.reserve(results.size());
    for (std::size_t t = 0; t < results.size(); ++t) {
        const int p = tasks[t].p;
        out.task_seconds.push_back(results[t].seconds);
        for (int q = 0; q <= dc.qmax(); ++q) {
            auto& dst = out.at[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            for (auto& g : results[t].e1[static_cast<std::size_t>(q)]) dst.e1.push_back(std::move(g));
            for (auto& g : results[t].im[static_cast<std::size_t>(q)]) dst.im.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace coverph
