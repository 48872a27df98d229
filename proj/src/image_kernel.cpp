#include "coverph/image_kernel.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coverph/errors.hpp"

namespace coverph {

namespace {

// Index of the lowest (bottom-most in basis order) nonzero entry, or -1.
int lowest(const std::map<int, int>& sparse_col) {
    return sparse_col.empty() ? -1 : sparse_col.rbegin()->first;
}

} // namespace

BarcodeBasis ImageKernelResult::kernel_basis() const {
    std::vector<Interval> bars;
    bars.reserve(kernel.size());
    for (const auto& v : kernel) bars.push_back(v.assoc);
    return BarcodeBasis(std::move(bars));
}

BarcodeBasis ImageKernelResult::image_basis() const {
    std::vector<Interval> bars;
    bars.reserve(image.size());
    for (const auto& v : image) bars.push_back(v.assoc);
    return BarcodeBasis(std::move(bars));
}

// The image/kernel sweep. State:
//  - R: the working matrix, related to the input by the accumulated column
//    operations (columns of substituted pivots are zeroed);
//  - T: the same column operations applied to the identity, so column j of R
//    equals M times column j of T, and T columns are the domain combinations
//    behind every image/kernel generator;
//  - kernel_out: kernel generators found so far (they double as the working
//    kernel matrix: evaluating them at the current critical value gives the
//    alive-restricted kernel columns);
//  - pivots: domain indices already claimed by a kernel generator's pivot.
// At each critical value a: reduce the kernel columns to unique pivots,
// substitute columns whose freshly exposed kernel pivot is unclaimed, then
// reduce the alive part of R left to right; alive columns that reduce to zero
// with an unclaimed index yield new kernel generators with step coefficient a.
ImageKernelResult image_kernel(const PersistenceMorphismMatrix& M, const PrimeField& F,
                               bool want_preimages) {
    M.validate(F);
    const BarcodeBasis& A = M.domain;
    const BarcodeBasis& B = M.codomain;
    const int n = A.size();
    const int m = B.size();

    std::vector<std::vector<int>> R(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) R[r][c] = F.normalize(M.at(r, c));
    std::vector<std::vector<int>> T(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int j = 0; j < n; ++j) T[j][j] = 1;

    std::vector<BarcodeVector> kernel_out;
    std::set<int> pivots;

    // Columns are processed in birth order (stable on the stored order), so
    // "left to right" means oldest first even if the caller's basis is not
    // globally sorted: a newly born column must reduce against the existing
    // pivots, never the other way around.
    std::vector<int> col_order(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) col_order[static_cast<std::size_t>(j)] = j;
    std::stable_sort(col_order.begin(), col_order.end(),
                     [&](int x, int y) { return A.bar(x).birth < A.bar(y).birth; });

    for (Filt a : critical_values({&A, &B})) {
        if (!(a < kInfFilt)) continue; // no events at +inf

        // Reduce the kernel columns (restricted to alive domain rows) so each
        // has a unique pivot; the same ⊞-operations update the stored output.
        std::map<int, std::size_t> kpiv; // pivot row -> kernel column
        for (std::size_t k = 0; k < kernel_out.size(); ++k) {
            for (;;) {
                std::map<int, int> ev = evaluate_at(kernel_out[k], A, a);
                int piv = lowest(ev);
                if (piv < 0) break;
                auto it = kpiv.find(piv);
                if (it == kpiv.end()) {
                    kpiv[piv] = k;
                    break;
                }
                const BarcodeVector& older = kernel_out[it->second];
                int lead = evaluate_at(older, A, a).at(piv);
                int t = F.neg(F.div(ev.at(piv), lead));
                kernel_out[k] = bar_sum(A, F, {{1, &kernel_out[k]}, {t, &older}});
            }
        }

        // A kernel pivot exposed on an unclaimed index means that column of R
        // is about to reduce to zero; substitute its image content by the
        // image of the kernel combination instead of re-deriving it.
        for (const auto& [piv, k] : kpiv) {
            if (pivots.count(piv)) continue;
            std::map<int, int> ev = evaluate_at(kernel_out[k], A, a);
            for (int i = 0; i < n; ++i) {
                auto it = ev.find(i);
                T[i][piv] = (it == ev.end()) ? 0 : it->second;
            }
            for (int r = 0; r < m; ++r) R[r][piv] = 0;
            pivots.insert(piv);
        }

        // Left-to-right reduction of the alive block of R; T receives the
        // same column operations.
        std::map<int, int> rpiv; // pivot row (codomain index) -> column
        for (int j : col_order) {
            if (!A.bar(j).alive_at(a)) continue;
            for (;;) {
                int low = -1;
                for (int r = 0; r < m; ++r)
                    if (R[r][j] != 0 && B.bar(r).alive_at(a)) low = r;
                if (low < 0) {
                    if (!pivots.count(j)) {
                        std::map<int, int> coeffs;
                        for (int i = 0; i < n; ++i)
                            if (T[i][j] != 0) coeffs[i] = T[i][j];
                        kernel_out.push_back(make_vector(A, std::move(coeffs), a, F));
                        pivots.insert(j);
                    }
                    break;
                }
                auto it = rpiv.find(low);
                if (it == rpiv.end()) {
                    rpiv[low] = j;
                    break;
                }
                int i = it->second;
                int t = F.neg(F.div(R[low][j], R[low][i]));
                for (int r = 0; r < m; ++r) R[r][j] = F.add(R[r][j], F.mul(t, R[r][i]));
                for (int r = 0; r < n; ++r) T[r][j] = F.add(T[r][j], F.mul(t, T[r][i]));
            }
        }
    }

    ImageKernelResult out;
    for (const BarcodeVector& v : kernel_out)
        if (!v.is_zero()) out.kernel.push_back(v);

    // Image sweep, independent of the kernel bookkeeping above. Each domain
    // column contributes the constant codomain vector M·e_j on the interval
    // [birth_j, ...); columns are reduced oldest-birth-first at every critical
    // value, and a column with no pivot on an alive row closes there: its
    // class has fallen into the span of older image columns. Naturality keeps
    // everything consistent pointwise — a column's image support dies no
    // later than the column itself — so a closed column stays closed and
    // contributions from dead reducers evaluate to zero automatically.
    struct ICol {
        std::map<int, int> content; // over B
        std::map<int, int> pre;     // over A, the column combination used
        Filt birth = 0;
        Filt death = kInfFilt;
        bool open = true;
    };
    std::vector<ICol> icols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ICol& c = icols[static_cast<std::size_t>(j)];
        c.birth = A.bar(j).birth;
        c.pre[j] = 1;
        for (int r = 0; r < m; ++r)
            if (M.at(r, j) != 0) c.content[r] = F.normalize(M.at(r, j));
    }
    for (Filt a : critical_values({&A, &B})) {
        if (!(a < kInfFilt)) continue;
        std::map<int, int> ipiv; // pivot row (codomain index) -> column
        for (int j : col_order) {
            ICol& cj = icols[static_cast<std::size_t>(j)];
            if (!cj.open || cj.birth > a) continue;
            for (;;) {
                int low = -1;
                for (const auto& [r, c] : cj.content)
                    if (c != 0 && B.bar(r).alive_at(a)) low = r;
                if (low < 0) {
                    cj.open = false;
                    cj.death = a;
                    break;
                }
                auto it = ipiv.find(low);
                if (it == ipiv.end()) {
                    ipiv[low] = j;
                    break;
                }
                const ICol& ci = icols[static_cast<std::size_t>(it->second)];
                int t = F.neg(F.div(cj.content.at(low), ci.content.at(low)));
                for (const auto& [r, c] : ci.content) {
                    int v = F.add(cj.content.count(r) ? cj.content.at(r) : 0, F.mul(t, c));
                    if (v == 0)
                        cj.content.erase(r);
                    else
                        cj.content[r] = v;
                }
                for (const auto& [r, c] : ci.pre) {
                    int v = F.add(cj.pre.count(r) ? cj.pre.at(r) : 0, F.mul(t, c));
                    if (v == 0)
                        cj.pre.erase(r);
                    else
                        cj.pre[r] = v;
                }
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        ICol& c = icols[static_cast<std::size_t>(j)];
        if (c.content.empty()) continue;
        BarcodeVector img = make_vector(B, std::move(c.content), c.birth, F);
        if (img.is_zero()) continue;
        img.assoc.death = std::min(img.assoc.death, c.death);
        if (img.assoc.degenerate()) continue;
        out.image.push_back(img);
        out.image_source_col.push_back(j);
        if (want_preimages) {
            BarcodeVector pre = make_vector(A, std::move(c.pre), c.birth, F);
            pre.assoc.death = std::min(pre.assoc.death, img.assoc.death);
            out.preimage.push_back(std::move(pre));
        }
    }
    return out;
}

} // namespace coverph
