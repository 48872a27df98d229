#pragma once

#include <utility>
#include <vector>

#include "coverph/double_complex.hpp"

namespace coverph {

// One generator of a page entry: its bar, its coordinates over the previous
// page's basis at the same position (empty on page 1), and its representative
// in the total complex.
struct PageGen {
    Interval bar;
    BarcodeVector coords;
    TotalChain rep;
};

// E^r_{p,q} together with the data needed to lift through this page:
// the incoming-image basis used at formation (over the previous page), and
// the outgoing differential d^r computed while processing page r.
struct PagePosition {
    BarcodeBasis basis;
    std::vector<PageGen> gens;
    std::vector<BarcodeVector> formation_img;  // over the previous page's basis
    std::vector<std::vector<int>> diff;        // [target gen][source gen]; empty if no target
};

// A bar of the assembled persistent homology, with the positions (p,q) of the
// infinity-page generators it was glued from, ordered by p descending.
struct AssembledBar {
    Interval bar;
    std::vector<std::pair<int, int>> sources;
};

// The cover spectral sequence engine: local homology (page 1), higher
// differentials by representative lifting, page turning up to the structural
// collapse page L = dim(nerve) + 1, and the extension step gluing the
// infinity page into the persistent homology of the global complex.
class SpectralEngine {
public:
    SpectralEngine(const CoverAssignment& cover, const Nerve& nerve, const PrimeField& F,
                   int workers = 1);

    void run();

    // Structural collapse page: every d^r with r >= L is out of range.
    int page_limit() const { return L_; }
    // Earliest page whose differentials all vanish (diagnostic; never used to
    // cut the computation short). Equals page_limit() when none do earlier.
    int detected_collapse_page() const { return collapse_; }

    const DoubleComplex& complex() const { return dc_; }
    const ZeroPageResult& zero_page_data() const { return zp_; }

    // Page data for r in [1, page_limit()], p in [0, pmax], q in [0, qmax].
    const PagePosition& page(int r, int p, int q) const;

    // Assembled persistent homology in degree n, with extension provenance.
    const std::vector<AssembledBar>& homology(int n) const;
    int max_degree() const { return static_cast<int>(homology_.size()) - 1; }

private:
    struct Pos {
        int p, q;
    };

    // Stage-1 lift: express x (a vertical cycle in S_{p,q} at value v) as
    // d(u) + sum of page-1 representative chains. Returns the page-1
    // coefficients; u is accumulated from the stored vertical preimages.
    std::map<int, int> solve_im_e1(Pos P, Filt v, const Chain& x, Chain& u) const;
    // Stage-r lift (r >= 2): re-express coefficients over page r-1 at P in
    // terms of the page-r basis, discarding the incoming-image part.
    std::map<int, int> stage_solve(Pos P, int r, Filt v, const std::map<int, int>& prev) const;

    // Subtract class-preserving chains from `rep` so that the component of
    // interest matches `res` exactly; columns are the alive vertical-image
    // chains at P and the d^Tot residues of page 1..rmax generators mapping
    // into P. `extension` switches the subtraction rule (boundaries of the
    // columns instead of the columns themselves).
    void kill_residual(Pos P, Filt v, const Chain& res, int rmax, TotalChain& rep,
                      bool extension) const;

    void build_page_one();
    void compute_differentials(int k);
    void turn_page(int k);
    void solve_extensions_and_assemble();

    DoubleComplex dc_;
    PrimeField F_;
    int workers_ = 1;
    int L_ = 1;
    int collapse_ = 1;
    ZeroPageResult zp_;
    // pages_[r][p][q] for r in [1, L]; index 0 unused.
    std::vector<std::vector<std::vector<PagePosition>>> pages_;
    std::vector<std::vector<AssembledBar>> homology_; // [n]
};

} // namespace coverph
