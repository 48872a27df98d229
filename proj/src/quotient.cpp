#include "coverph/quotient.hpp"

#include <algorithm>
#include <string>

#include "coverph/errors.hpp"

namespace coverph {

// Dedicated left-to-right sweep on the block matrix (h^T | g^T). The H
// columns stay leftmost, so they hold their pivots with priority; a G column
// that reduces to zero at value a has fallen into span(H + earlier G) there,
// which is exactly a death in the quotient: its generator gets the bar
// [birth, a) with the column content from just before the value-a reductions
// as representative. A G column whose support dies in V is closed the same
// way (its class dies because the underlying element does). Columns that
// survive the whole sweep are infinite generators.
QuotientResult quotient_basis(const std::vector<BarcodeVector>& H,
                              const std::vector<BarcodeVector>& G, const BarcodeBasis& V,
                              const PrimeField& F) {
    const int nH = static_cast<int>(H.size());
    const int nG = static_cast<int>(G.size());
    const int n = nH + nG;

    struct Col {
        std::map<int, int> content; // sparse over V rows
        Filt birth = 0;
        bool open = false;
        Filt death = kInfFilt; // sweep death (zero event or support death)
    };
    std::vector<Col> cols(static_cast<std::size_t>(n));
    std::vector<Interval> col_bars;
    auto add_col = [&](const BarcodeVector& v, int j) {
        if (v.basis_uid != V.uid())
            throw UsageError("quotient_basis: sub-basis vector is not over V");
        if (v.is_zero()) throw UsageError("quotient_basis: zero vector in sub-basis");
        Col& c = cols[static_cast<std::size_t>(j)];
        c.content = v.coeffs;
        c.birth = v.assoc.birth;
        c.open = true;
        col_bars.push_back(v.assoc);
    };
    for (int i = 0; i < nH; ++i) add_col(H[static_cast<std::size_t>(i)], i);
    for (int i = 0; i < nG; ++i) add_col(G[static_cast<std::size_t>(i)], nH + i);
    BarcodeBasis col_basis(col_bars); // only for the critical value set

    QuotientResult out;
    // Closed generators are recorded here by G column so the output keeps the
    // input order of G regardless of death order.
    std::map<int, std::pair<Interval, BarcodeVector>> closed_gens;

    // Sweep order: H first (zero classes reduce everything for free), then G
    // by ascending birth. The elder rule depends on this — with G out of birth
    // order, a column born exactly at value a can steal a pivot from an older
    // column and zero it out, reporting a false death/birth pair where the
    // older class in fact continues.
    std::vector<int> sweep_order;
    for (int j = 0; j < nH; ++j) sweep_order.push_back(j);
    {
        std::vector<int> gorder;
        for (int j = nH; j < n; ++j) gorder.push_back(j);
        std::stable_sort(gorder.begin(), gorder.end(), [&](int a, int b) {
            return cols[static_cast<std::size_t>(a)].birth < cols[static_cast<std::size_t>(b)].birth;
        });
        sweep_order.insert(sweep_order.end(), gorder.begin(), gorder.end());
    }

    for (Filt a : critical_values({&V, &col_basis})) {
        if (!(a < kInfFilt)) continue;
        // Contents from before this value's reductions: the representative of
        // anything that dies here.
        std::vector<std::map<int, int>> snap(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            if (cols[static_cast<std::size_t>(j)].open) snap[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)].content;

        std::map<int, int> rpiv; // pivot row (V index) -> column
        for (int j : sweep_order) {
            Col& cj = cols[static_cast<std::size_t>(j)];
            if (!cj.open || cj.birth > a) continue;
            for (;;) {
                int low = -1;
                for (const auto& [r, c] : cj.content)
                    if (c != 0 && V.bar(r).alive_at(a)) low = r;
                if (low < 0) {
                    cj.open = false;
                    cj.death = a;
                    if (j >= nH && a > cj.birth)
                        closed_gens.emplace(j, std::make_pair(
                            Interval{cj.birth, a},
                            make_vector(V, std::map<int, int>(snap[static_cast<std::size_t>(j)]),
                                        cj.birth, F)));
                    break;
                }
                auto it = rpiv.find(low);
                if (it == rpiv.end()) {
                    rpiv[low] = j;
                    break;
                }
                const Col& ci = cols[static_cast<std::size_t>(it->second)];
                int t = F.neg(F.div(cj.content.at(low), ci.content.at(low)));
                for (const auto& [r, c] : ci.content) {
                    int v = F.add(cj.content.count(r) ? cj.content.at(r) : 0, F.mul(t, c));
                    if (v == 0)
                        cj.content.erase(r);
                    else
                        cj.content[r] = v;
                }
            }
        }
    }

    std::vector<Interval> bars;
    for (int j = nH; j < n; ++j) {
        Col& cj = cols[static_cast<std::size_t>(j)];
        if (cj.open) {
            bars.push_back(Interval{cj.birth, kInfFilt});
            out.reps.push_back(make_vector(V, std::map<int, int>(cj.content), cj.birth, F));
        } else if (auto it = closed_gens.find(j); it != closed_gens.end()) {
            bars.push_back(it->second.first);
            out.reps.push_back(it->second.second);
        }
    }
    out.basis = BarcodeBasis(std::move(bars));

    // Pointwise rank accounting: the H columns alive in the sweep must match
    // |H^r| (H independent), and the quotient generators alive must match
    // |G^r| - |H^r| (containment + independence of G). Any violation of the
    // preconditions shows up here at some critical value.
    for (Filt r : critical_values({&V, &col_basis})) {
        if (!(r < kInfFilt)) continue;
        int aliveH = 0, aliveG = 0, sweepH = 0, quotG = 0;
        for (int i = 0; i < nH; ++i)
            if (H[static_cast<std::size_t>(i)].assoc.alive_at(r)) ++aliveH;
        for (int i = 0; i < nG; ++i)
            if (G[static_cast<std::size_t>(i)].assoc.alive_at(r)) ++aliveG;
        for (int j = 0; j < nH; ++j)
            if (Interval{cols[static_cast<std::size_t>(j)].birth, cols[static_cast<std::size_t>(j)].death}.alive_at(r)) ++sweepH;
        for (const Interval& b : out.basis.bars())
            if (b.alive_at(r)) ++quotG;
        if (sweepH != aliveH || quotG != aliveG - aliveH)
            throw UsageError("quotient_basis: containment/independence precondition fails at r = " +
                             std::to_string(r));
    }
    return out;
}

ChainHomologyResult chain_homology(const std::vector<BarcodeBasis>& modules,
                                   const std::vector<PersistenceMorphismMatrix>& differentials,
                                   const PrimeField& F) {
    const std::size_t n = modules.size();
    if (differentials.size() + 1 != n)
        throw UsageError("chain_homology: expected one differential per consecutive module pair");
    for (std::size_t j = 0; j < differentials.size(); ++j) {
        if (differentials[j].domain.uid() != modules[j + 1].uid() ||
            differentials[j].codomain.uid() != modules[j].uid())
            throw UsageError("chain_homology: differential bases do not match the modules");
        differentials[j].validate(F);
    }

    // d_j ∘ d_{j+1} = 0, checked pointwise at every critical value.
    for (std::size_t j = 1; j < differentials.size(); ++j) {
        const auto& outer = differentials[j - 1]; // V_j -> V_{j-1}
        const auto& inner = differentials[j];     // V_{j+1} -> V_j
        for (Filt r : critical_values({&inner.domain, &inner.codomain, &outer.codomain})) {
            if (!(r < kInfFilt)) continue;
            PointwiseMatrix pi = pointwise_matrix(inner, r);
            PointwiseMatrix po = pointwise_matrix(outer, r);
            for (std::size_t a = 0; a < po.row_idx.size(); ++a)
                for (std::size_t c = 0; c < pi.col_idx.size(); ++c) {
                    long long acc = 0;
                    for (std::size_t b = 0; b < pi.row_idx.size(); ++b)
                        acc += static_cast<long long>(po.m[a][b]) * pi.m[b][c];
                    if (F.normalize(acc) != 0)
                        throw UsageError("chain_homology: differentials do not compose to zero");
                }
        }
    }

    ChainHomologyResult out;
    out.boundary_data.reserve(differentials.size());
    for (const auto& d : differentials) out.boundary_data.push_back(image_kernel(d, F, true));

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<BarcodeVector> ker;
        if (j == 0) {
            for (int i = 0; i < modules[0].size(); ++i) ker.push_back(unit_vector(modules[0], i));
        } else {
            ker = out.boundary_data[j - 1].kernel;
        }
        std::vector<BarcodeVector> img;
        if (j < differentials.size()) img = out.boundary_data[j].image;
        out.homology.push_back(quotient_basis(img, ker, modules[j], F));
    }
    return out;
}

} // namespace coverph
