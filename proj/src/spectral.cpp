#include "coverph/spectral.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "coverph/errors.hpp"
#include "coverph/linalg_util.hpp"
#include "coverph/runtime.hpp"

namespace coverph {

namespace {

// Dense solve of rhs = Σ t_j · cols[j] over the given row set. Rows are
// global indices; anything outside `rows` is zero in every column and in the
// right-hand side by construction.
std::optional<std::vector<int>> solve_over_rows(const std::vector<int>& rows,
                                                const std::vector<const Chain*>& cols,
                                                const Chain& rhs, const PrimeField& F) {
    std::map<int, int> dense_row;
    for (std::size_t i = 0; i < rows.size(); ++i) dense_row[rows[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> A(rows.size(), std::vector<int>(cols.size(), 0));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, c] : *cols[j]) {
            auto it = dense_row.find(i);
            if (it == dense_row.end())
                return std::nullopt; // column has support outside the row set
            A[static_cast<std::size_t>(it->second)][j] = c;
        }
    std::vector<int> b(rows.size(), 0);
    for (const auto& [i, c] : rhs) {
        auto it = dense_row.find(i);
        if (it == dense_row.end()) return std::nullopt;
        b[static_cast<std::size_t>(it->second)] = c;
    }
    return solve_linear(A, b, F);
}

} // namespace

SpectralEngine::SpectralEngine(const CoverAssignment& cover, const Nerve& nerve,
                               const PrimeField& F, int workers)
    : dc_(cover, nerve, F), F_(F), workers_(workers) {
    if (workers_ < 1) throw UsageError("SpectralEngine: need at least one worker");
    L_ = std::max(dc_.pmax(), 0) + 1;
    collapse_ = L_;
}

const PagePosition& SpectralEngine::page(int r, int p, int q) const {
    static const PagePosition kEmpty;
    if (r < 1 || r > L_ || !dc_.in_range(p, q) || pages_.empty()) return kEmpty;
    return pages_[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
}

const std::vector<AssembledBar>& SpectralEngine::homology(int n) const {
    static const std::vector<AssembledBar> kEmpty;
    if (n < 0 || n >= static_cast<int>(homology_.size())) return kEmpty;
    return homology_[static_cast<std::size_t>(n)];
}

void SpectralEngine::run() {
    homology_.clear();
    if (dc_.pmax() < 0 || dc_.qmax() < 0) {
        zp_ = ZeroPageResult{};
        pages_.clear();
        return;
    }
    zp_ = zero_page(dc_, workers_);
    build_page_one();
    for (int k = 1; k < L_; ++k) {
        compute_differentials(k);
        turn_page(k);
    }

    collapse_ = L_;
    for (int k = 1; k < L_; ++k) {
        bool all_zero = true;
        for (int p = 0; p <= dc_.pmax() && all_zero; ++p)
            for (int q = 0; q <= dc_.qmax() && all_zero; ++q)
                for (const auto& row : page(k, p, q).diff)
                    for (int e : row)
                        if (e != 0) {
                            all_zero = false;
                            break;
                        }
        if (all_zero) {
            collapse_ = k;
            break;
        }
    }

    solve_extensions_and_assemble();
}

void SpectralEngine::build_page_one() {
    pages_.assign(static_cast<std::size_t>(L_) + 1,
                  std::vector<std::vector<PagePosition>>(
                      static_cast<std::size_t>(dc_.pmax()) + 1,
                      std::vector<PagePosition>(static_cast<std::size_t>(dc_.qmax()) + 1)));
    for (int p = 0; p <= dc_.pmax(); ++p)
        for (int q = 0; q <= dc_.qmax(); ++q) {
            const ZeroPageEntry& e = zp_.at[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            PagePosition& pos = pages_[1][static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            std::vector<Interval> bars;
            for (const LocalGen& g : e.e1) {
                bars.push_back(g.bar);
                PageGen pg;
                pg.bar = g.bar;
                pg.rep.n = p + q;
                pg.rep.comp[p] = g.chain;
                pos.gens.push_back(std::move(pg));
            }
            pos.basis = BarcodeBasis(std::move(bars));
        }
}

std::map<int, int> SpectralEngine::solve_im_e1(Pos P, Filt v, const Chain& x, Chain& u) const {
    std::map<int, int> c1;
    if (x.empty()) return c1;
    if (!dc_.in_range(P.p, P.q))
        throw InternalConsistencyError("lift: nonzero chain in a zero module");
    const CechModule& m = dc_.mod(P.p, P.q);
    const ZeroPageEntry& e = zp_.at[static_cast<std::size_t>(P.p)][static_cast<std::size_t>(P.q)];

    const int nblocks = static_cast<int>(m.pieces.size());
    for (int b = 0; b < nblocks; ++b) {
        const int lo = m.offset[static_cast<std::size_t>(b)];
        const int hi = lo + m.pieces[static_cast<std::size_t>(b)].count(P.q);
        Chain rhs;
        for (auto it = x.lower_bound(lo); it != x.end() && it->first < hi; ++it)
            rhs[it->first] = it->second;
        if (rhs.empty()) continue;

        std::vector<const Chain*> cols;
        std::vector<std::size_t> im_idx, e1_idx;
        for (std::size_t i = 0; i < e.im.size(); ++i)
            if (e.im[i].block == b && e.im[i].bar.alive_at(v)) {
                cols.push_back(&e.im[i].chain);
                im_idx.push_back(i);
            }
        for (std::size_t i = 0; i < e.e1.size(); ++i)
            if (e.e1[i].block == b && e.e1[i].bar.alive_at(v)) {
                cols.push_back(&e.e1[i].chain);
                e1_idx.push_back(i);
            }
        std::vector<int> rows;
        for (int i = lo; i < hi; ++i)
            if (dc_.filt(P.p, P.q, i) <= v) rows.push_back(i);

        auto sol = solve_over_rows(rows, cols, rhs, F_);
        if (!sol)
            throw InternalConsistencyError(
                "lift: local cycle is not spanned by boundaries and homology classes");
        for (std::size_t j = 0; j < im_idx.size(); ++j)
            if ((*sol)[j] != 0) chain_axpy(u, (*sol)[j], e.im[im_idx[j]].preimage, F_);
        for (std::size_t j = 0; j < e1_idx.size(); ++j) {
            int t = (*sol)[im_idx.size() + j];
            if (t != 0) c1[static_cast<int>(e1_idx[j])] = t;
        }
    }
    return c1;
}

std::map<int, int> SpectralEngine::stage_solve(Pos P, int r, Filt v,
                                               const std::map<int, int>& prev) const {
    std::map<int, int> out;
    if (prev.empty()) return out;
    const PagePosition& below = page(r - 1, P.p, P.q);
    const PagePosition& cur = page(r, P.p, P.q);

    std::vector<int> rows;
    for (int i = 0; i < below.basis.size(); ++i)
        if (below.basis.bar(i).alive_at(v)) rows.push_back(i);

    std::vector<Chain> col_store;
    std::vector<std::size_t> gen_idx;
    for (const BarcodeVector& h : cur.formation_img)
        if (h.assoc.alive_at(v)) col_store.push_back(evaluate_at(h, below.basis, v));
    const std::size_t nimg = col_store.size();
    for (std::size_t i = 0; i < cur.gens.size(); ++i)
        if (cur.gens[i].bar.alive_at(v)) {
            col_store.push_back(evaluate_at(cur.gens[i].coords, below.basis, v));
            gen_idx.push_back(i);
        }
    std::vector<const Chain*> cols;
    for (const Chain& c : col_store) cols.push_back(&c);

    Chain rhs;
    for (const auto& [i, c] : prev) rhs[i] = c;
    auto sol = solve_over_rows(rows, cols, rhs, F_);
    if (!sol)
        throw InternalConsistencyError("lift: page class not spanned by image and next page");
    for (std::size_t j = 0; j < gen_idx.size(); ++j) {
        int t = (*sol)[nimg + j];
        if (t != 0) out[static_cast<int>(gen_idx[j])] = t;
    }
    return out;
}

void SpectralEngine::kill_residual(Pos P, Filt v, const Chain& res, int rmax, TotalChain& rep,
                                  bool extension) const {
    if (res.empty()) return;
    if (!dc_.in_range(P.p, P.q))
        throw InternalConsistencyError("residual in a zero module");

    struct Col {
        Chain chain;
        bool is_im;
        int pg;
        Pos src;
        int idx;
    };
    std::vector<Col> cols;
    const ZeroPageEntry& e = zp_.at[static_cast<std::size_t>(P.p)][static_cast<std::size_t>(P.q)];
    for (std::size_t i = 0; i < e.im.size(); ++i)
        if (e.im[i].bar.alive_at(v))
            cols.push_back({e.im[i].chain, true, 0, P, static_cast<int>(i)});
    for (int r = 1; r <= rmax; ++r) {
        Pos src{P.p + r, P.q - r + 1};
        if (!dc_.in_range(src.p, src.q)) continue;
        const PagePosition& sp = page(r, src.p, src.q);
        for (std::size_t gi = 0; gi < sp.gens.size(); ++gi) {
            if (sp.gens[gi].bar.birth > v) continue;
            Chain c = dc_.dtot_component(sp.gens[gi].rep, P.p);
            if (c.empty()) continue;
            cols.push_back({std::move(c), false, r, src, static_cast<int>(gi)});
        }
    }

    std::set<int> rowset;
    for (const auto& [i, c] : res) {
        if (dc_.filt(P.p, P.q, i) > v)
            throw InternalConsistencyError("residual supported past the solve value");
        rowset.insert(i);
    }
    for (const Col& c : cols)
        for (const auto& [i, t] : c.chain) rowset.insert(i);
    std::vector<int> rows(rowset.begin(), rowset.end());
    std::vector<const Chain*> col_ptrs;
    for (const Col& c : cols) col_ptrs.push_back(&c.chain);
    auto sol = solve_over_rows(rows, col_ptrs, res, F_);
    if (!sol)
        throw InternalConsistencyError(
            "residual not a boundary against lower pages at (" + std::to_string(P.p) + "," +
            std::to_string(P.q) + ") value " + std::to_string(v) + " rmax " +
            std::to_string(rmax) + (extension ? " (extension)" : ""));

    for (std::size_t j = 0; j < cols.size(); ++j) {
        int t = (*sol)[j];
        if (t == 0) continue;
        const Col& c = cols[j];
        if (c.is_im) {
            const LocalGen& g = e.im[static_cast<std::size_t>(c.idx)];
            if (!extension) {
                chain_axpy(rep.comp[P.p], F_.neg(t), g.preimage, F_);
                if (rep.comp[P.p].empty()) rep.comp.erase(P.p);
            } else {
                chain_axpy(rep.comp[P.p], F_.neg(t), g.chain, F_);
                if (rep.comp[P.p].empty()) rep.comp.erase(P.p);
                Chain h = dc_.horizontal(P.p, P.q + 1, g.preimage);
                if (!h.empty()) {
                    chain_axpy(rep.comp[P.p - 1], F_.neg(t), h, F_);
                    if (rep.comp[P.p - 1].empty()) rep.comp.erase(P.p - 1);
                }
            }
        } else {
            const TotalChain& gt =
                page(c.pg, c.src.p, c.src.q).gens[static_cast<std::size_t>(c.idx)].rep;
            if (!extension) {
                total_axpy(rep, F_.neg(t), gt, F_);
            } else {
                TotalChain dg = dc_.dtot(gt);
                total_axpy(rep, F_.neg(t), dg, F_);
            }
        }
    }
}

void SpectralEngine::compute_differentials(int k) {
    struct Job {
        int p, q;
    };
    std::vector<Job> jobs;
    for (int p = k; p <= dc_.pmax(); ++p)
        for (int q = 0; q <= dc_.qmax(); ++q) {
            if (q + k - 1 > dc_.qmax()) continue;
            if (page(k, p, q).gens.empty() && dc_.dim(p - k, q + k - 1) >= 0) {
                // Even with no generators we record an empty (zero) matrix so
                // page turning sees the position as processed.
            }
            jobs.push_back({p, q});
        }

    struct JobResult {
        std::vector<std::vector<int>> diff; // [target][source]
        std::vector<TotalChain> reps;
    };

    auto run_job = [&](int ji) -> JobResult {
        const auto [p, q] = jobs[static_cast<std::size_t>(ji)];
        const PagePosition& src = page(k, p, q);
        const Pos P{p - k, q + k - 1};
        const int nt = static_cast<int>(page(k, P.p, P.q).gens.size());
        JobResult out;
        out.diff.assign(static_cast<std::size_t>(nt),
                        std::vector<int>(src.gens.size(), 0));
        for (std::size_t j = 0; j < src.gens.size(); ++j) {
            TotalChain rep = src.gens[j].rep;
            const Filt a = src.gens[j].bar.birth;
            Chain x = dc_.dtot_component(rep, P.p);
            Chain u;
            std::map<int, int> c = solve_im_e1(P, a, x, u);
            for (int r = 2; r <= k; ++r) c = stage_solve(P, r, a, c);
            Chain resid = x;
            for (const auto& [beta, coef] : c) {
                out.diff[static_cast<std::size_t>(beta)][j] = coef;
                const Chain* top = page(k, P.p, P.q).gens[static_cast<std::size_t>(beta)].rep.at(P.p);
                if (top) chain_axpy(resid, F_.neg(coef), *top, F_);
            }
            kill_residual(P, a, resid, k - 1, rep, false);
            out.reps.push_back(std::move(rep));
        }
        return out;
    };

    std::vector<JobResult> results = parallel_map_deterministic<JobResult>(
        static_cast<int>(jobs.size()), workers_, run_job);

    for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
        const auto [p, q] = jobs[ji];
        PagePosition& src =
            pages_[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        src.diff = std::move(results[ji].diff);
        for (std::size_t j = 0; j < src.gens.size(); ++j)
            src.gens[j].rep = std::move(results[ji].reps[j]);
        // Naturality of the page differential is a theorem; violation means a
        // bug upstream.
        if (!src.gens.empty()) {
            const Pos P{p - k, q + k - 1};
            try {
                PersistenceMorphismMatrix M{src.basis, page(k, P.p, P.q).basis, src.diff};
                M.validate(F_);
            } catch (const UsageError& err) {
                throw InternalConsistencyError(std::string("page differential not natural: ") +
                                               err.what());
            }
        }
    }
}

void SpectralEngine::turn_page(int k) {
    const int pmax = dc_.pmax(), qmax = dc_.qmax();

    // Phase A: kernels of the outgoing differentials, images delivered to the
    // targets.
    struct Pos2 {
        int p, q;
    };
    std::vector<Pos2> positions;
    for (int p = 0; p <= pmax; ++p)
        for (int q = 0; q <= qmax; ++q)
            if (!page(k, p, q).gens.empty()) positions.push_back({p, q});

    struct IkOut {
        std::vector<BarcodeVector> kernel;
        std::vector<BarcodeVector> image; // over the target basis
        bool has_target = false;
    };
    auto run_ik = [&](int pi) -> IkOut {
        const auto [p, q] = positions[static_cast<std::size_t>(pi)];
        const PagePosition& src = page(k, p, q);
        IkOut out;
        if (p >= k && dc_.in_range(p - k, q + k - 1)) {
            out.has_target = true;
            PersistenceMorphismMatrix M{src.basis, page(k, p - k, q + k - 1).basis, src.diff};
            ImageKernelResult ik = image_kernel(M, F_, false);
            out.kernel = std::move(ik.kernel);
            out.image = std::move(ik.image);
        } else {
            for (int i = 0; i < src.basis.size(); ++i)
                out.kernel.push_back(unit_vector(src.basis, i));
        }
        return out;
    };
    std::vector<IkOut> iks = parallel_map_deterministic<IkOut>(
        static_cast<int>(positions.size()), workers_, run_ik);

    std::vector<std::vector<std::vector<BarcodeVector>>> ker_at(
        static_cast<std::size_t>(pmax) + 1,
        std::vector<std::vector<BarcodeVector>>(static_cast<std::size_t>(qmax) + 1));
    std::vector<std::vector<std::vector<BarcodeVector>>> img_at = ker_at;
    for (std::size_t pi = 0; pi < positions.size(); ++pi) {
        const auto [p, q] = positions[pi];
        ker_at[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = std::move(iks[pi].kernel);
        if (iks[pi].has_target)
            img_at[static_cast<std::size_t>(p - k)][static_cast<std::size_t>(q + k - 1)] =
                std::move(iks[pi].image);
    }

    // Phase B: quotient per position, new representatives, formation cleanup.
    auto run_form = [&](int pi) -> PagePosition {
        const auto [p, q] = positions[static_cast<std::size_t>(pi)];
        const PagePosition& old = page(k, p, q);
        PagePosition next;
        std::vector<BarcodeVector>& H = img_at[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        std::vector<BarcodeVector>& G = ker_at[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        QuotientResult Q;
        try {
            Q = quotient_basis(H, G, old.basis, F_);
        } catch (const UsageError& err) {
            throw InternalConsistencyError(std::string("page turn quotient failed at (") +
                                           std::to_string(p) + "," + std::to_string(q) +
                                           "): " + err.what());
        }
        // Interval representatives, as at the zero page: correct each finite
        // generator by older generators alive at its death so that its
        // coordinate vector falls into the incoming-image span exactly there.
        std::vector<int> dying;
        for (int i = 0; i < Q.basis.size(); ++i)
            if (Q.basis.bar(i).death < kInfFilt) dying.push_back(i);
        std::sort(dying.begin(), dying.end(), [&](int a, int b) {
            if (Q.basis.bar(a).death != Q.basis.bar(b).death)
                return Q.basis.bar(a).death < Q.basis.bar(b).death;
            return a < b;
        });
        for (int i : dying) {
            const Filt d = Q.basis.bar(i).death;
            std::vector<int> rows;
            for (int r = 0; r < old.basis.size(); ++r)
                if (old.basis.bar(r).alive_at(d)) rows.push_back(r);
            std::vector<Chain> col_store;
            std::vector<int> gen_cols;
            for (const BarcodeVector& h : H)
                if (h.assoc.alive_at(d)) col_store.push_back(evaluate_at(h, old.basis, d));
            const std::size_t nimg = col_store.size();
            for (int j = 0; j < Q.basis.size(); ++j) {
                if (j == i || !Q.basis.bar(j).alive_at(d) ||
                    Q.basis.bar(j).birth > Q.basis.bar(i).birth)
                    continue;
                col_store.push_back(evaluate_at(Q.reps[static_cast<std::size_t>(j)], old.basis, d));
                gen_cols.push_back(j);
            }
            std::vector<const Chain*> cols;
            for (const Chain& c : col_store) cols.push_back(&c);
            Chain rhs = evaluate_at(Q.reps[static_cast<std::size_t>(i)], old.basis, d);
            auto sol = solve_over_rows(rows, cols, rhs, F_);
            if (!sol)
                throw InternalConsistencyError(
                    "page generator does not die into the incoming image at (" +
                    std::to_string(p) + "," + std::to_string(q) + ")");
            std::vector<std::pair<int, const BarcodeVector*>> terms;
            terms.emplace_back(1, &Q.reps[static_cast<std::size_t>(i)]);
            for (std::size_t j = 0; j < gen_cols.size(); ++j) {
                int t = (*sol)[nimg + j];
                if (t != 0)
                    terms.emplace_back(F_.neg(t),
                                       &Q.reps[static_cast<std::size_t>(gen_cols[j])]);
            }
            if (terms.size() > 1)
                Q.reps[static_cast<std::size_t>(i)] = bar_sum(old.basis, F_, terms);
        }
        for (int i = 0; i < Q.basis.size(); ++i) {
            PageGen g;
            g.bar = Q.basis.bar(i);
            g.coords = Q.reps[static_cast<std::size_t>(i)];
            g.rep.n = p + q;
            for (const auto& [alpha, cc] : g.coords.coeffs)
                total_axpy(g.rep, cc, old.gens[static_cast<std::size_t>(alpha)].rep, F_);
            const Pos P{p - k, q + k - 1};
            if (P.p >= 0 && dc_.in_range(P.p, P.q)) {
                Chain resid = dc_.dtot_component(g.rep, P.p);
                kill_residual(P, g.bar.birth, resid, k - 1, g.rep, false);
            }
            next.gens.push_back(std::move(g));
        }
        next.basis = Q.basis;
        next.formation_img = std::move(H);
        return next;
    };
    std::vector<PagePosition> formed = parallel_map_deterministic<PagePosition>(
        static_cast<int>(positions.size()), workers_, run_form);
    for (std::size_t pi = 0; pi < positions.size(); ++pi) {
        const auto [p, q] = positions[pi];
        pages_[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
            std::move(formed[pi]);
    }
}

void SpectralEngine::solve_extensions_and_assemble() {
    const int pmax = dc_.pmax(), qmax = dc_.qmax();
    const int nmax = pmax + qmax;
    homology_.assign(static_cast<std::size_t>(nmax) + 1, {});

    for (int n = 0; n <= nmax; ++n) {
        // Generators of total degree n in global order: p ascending, then the
        // basis order at each position.
        struct GenRef {
            Pos pos;
            int idx;
        };
        std::vector<GenRef> gens;
        std::vector<int> base_at(static_cast<std::size_t>(pmax) + 1, 0);
        for (int p = 0; p <= std::min(pmax, n); ++p) {
            const int q = n - p;
            base_at[static_cast<std::size_t>(p)] = static_cast<int>(gens.size());
            if (!dc_.in_range(p, q)) continue;
            const PagePosition& pos = page(L_, p, q);
            for (int i = 0; i < static_cast<int>(pos.gens.size()); ++i)
                gens.push_back({{p, q}, i});
        }
        if (gens.empty()) continue;

        auto gen_bar = [&](int g) -> const Interval& {
            return page(L_, gens[static_cast<std::size_t>(g)].pos.p,
                        gens[static_cast<std::size_t>(g)].pos.q)
                .gens[static_cast<std::size_t>(gens[static_cast<std::size_t>(g)].idx)]
                .bar;
        };

        // Extension coefficients per finite-death generator.
        auto run_ext = [&](int g) -> std::map<int, int> {
            std::map<int, int> ext;
            const GenRef& ref = gens[static_cast<std::size_t>(g)];
            const Interval& bar = gen_bar(g);
            if (!(bar.death < kInfFilt)) return ext;
            const Filt b = bar.death;
            TotalChain Y = page(L_, ref.pos.p, ref.pos.q)
                               .gens[static_cast<std::size_t>(ref.idx)]
                               .rep;
            for (int pp = ref.pos.p; pp >= 0; --pp) {
                const int qq = n - pp;
                const Chain* xc = Y.at(pp);
                if (!xc || xc->empty()) continue;
                if (!dc_.in_range(pp, qq))
                    throw InternalConsistencyError("extension: chain outside the grid");
                const Pos PP{pp, qq};
                Chain x = *xc;
                Chain u;
                std::map<int, int> c = solve_im_e1(PP, b, x, u);
                for (int r = 2; r <= L_; ++r) c = stage_solve(PP, r, b, c);
                for (const auto& [beta, coef] : c) {
                    ext[base_at[static_cast<std::size_t>(pp)] + beta] = coef;
                    total_axpy(Y, F_.neg(coef),
                               page(L_, pp, qq).gens[static_cast<std::size_t>(beta)].rep, F_);
                }
                const Chain* rc = Y.at(pp);
                if (rc && !rc->empty()) {
                    Chain resid = *rc;
                    kill_residual(PP, b, resid, L_ - 1, Y, true);
                }
                if (Y.at(pp) && !Y.at(pp)->empty())
                    throw InternalConsistencyError("extension: column residue survived");
            }
            if (!Y.is_zero())
                throw InternalConsistencyError("extension: representative did not cancel");
            return ext;
        };
        std::vector<std::map<int, int>> ext = parallel_map_deterministic<std::map<int, int>>(
            static_cast<int>(gens.size()), workers_, run_ext);

        // Assemble the degree-n barcode: tracked vectors over the generator
        // space, substituted at death events and reduced oldest-first.
        struct Track {
            std::map<int, int> v;
            Filt birth = 0;
            std::set<std::pair<int, int>> prov;
            bool alive = true;
        };
        std::vector<Track> tracks;
        auto note_support = [&](Track& t) {
            for (const auto& [g, c] : t.v)
                t.prov.insert({gens[static_cast<std::size_t>(g)].pos.p,
                               gens[static_cast<std::size_t>(g)].pos.q});
        };

        std::set<Filt> events;
        for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
            events.insert(gen_bar(g).birth);
            if (gen_bar(g).death < kInfFilt) events.insert(gen_bar(g).death);
        }

        std::vector<AssembledBar> out;
        for (Filt v : events) {
            for (int g = 0; g < static_cast<int>(gens.size()); ++g)
                if (gen_bar(g).birth == v) {
                    Track t;
                    t.v[g] = 1;
                    t.birth = v;
                    note_support(t);
                    tracks.push_back(std::move(t));
                }
            std::vector<int> dying;
            for (int g = 0; g < static_cast<int>(gens.size()); ++g)
                if (gen_bar(g).death == v) dying.push_back(g);
            if (dying.empty()) continue;

            for (Track& t : tracks) {
                if (!t.alive) continue;
                for (int g : dying) {
                    auto it = t.v.find(g);
                    if (it == t.v.end()) continue;
                    const int coef = it->second;
                    t.v.erase(it);
                    for (const auto& [g2, c2] : ext[static_cast<std::size_t>(g)]) {
                        int val = F_.add(t.v.count(g2) ? t.v.at(g2) : 0, F_.mul(coef, c2));
                        if (val == 0)
                            t.v.erase(g2);
                        else
                            t.v[g2] = val;
                    }
                }
                note_support(t);
            }

            // Reduce in birth order; vectors that become dependent die here.
            std::vector<int> order;
            for (int i = 0; i < static_cast<int>(tracks.size()); ++i)
                if (tracks[static_cast<std::size_t>(i)].alive) order.push_back(i);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return tracks[static_cast<std::size_t>(a)].birth <
                       tracks[static_cast<std::size_t>(b)].birth;
            });
            std::map<int, int> pivot; // generator -> track index
            for (int ti : order) {
                Track& t = tracks[static_cast<std::size_t>(ti)];
                for (;;) {
                    if (t.v.empty()) {
                        t.alive = false;
                        if (t.birth < v) {
                            AssembledBar ab;
                            ab.bar = {t.birth, v};
                            ab.sources.assign(t.prov.begin(), t.prov.end());
                            std::sort(ab.sources.begin(), ab.sources.end(),
                                      [](auto a, auto b) {
                                          return a.first != b.first ? a.first > b.first
                                                                    : a.second < b.second;
                                      });
                            out.push_back(std::move(ab));
                        }
                        break;
                    }
                    const int low = t.v.rbegin()->first;
                    auto it = pivot.find(low);
                    if (it == pivot.end()) {
                        pivot[low] = ti;
                        break;
                    }
                    Track& other = tracks[static_cast<std::size_t>(it->second)];
                    int f = F_.neg(F_.div(t.v.at(low), other.v.at(low)));
                    for (const auto& [g, c] : other.v) {
                        int val = F_.add(t.v.count(g) ? t.v.at(g) : 0, F_.mul(f, c));
                        if (val == 0)
                            t.v.erase(g);
                        else
                            t.v[g] = val;
                    }
                    note_support(t);
                }
            }
        }
        for (Track& t : tracks)
            if (t.alive) {
                AssembledBar ab;
                ab.bar = {t.birth, kInfFilt};
                ab.sources.assign(t.prov.begin(), t.prov.end());
                std::sort(ab.sources.begin(), ab.sources.end(), [](auto a, auto b) {
                    return a.first != b.first ? a.first > b.first : a.second < b.second;
                });
                out.push_back(std::move(ab));
            }
        std::stable_sort(out.begin(), out.end(),
                         [](const AssembledBar& a, const AssembledBar& b) {
                             return bar_less(a.bar, b.bar);
                         });
        homology_[static_cast<std::size_t>(n)] = std::move(out);
    }
}

} // namespace coverph
