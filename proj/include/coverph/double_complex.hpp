#pragma once

#include <map>
#include <vector>

#include "coverph/cover.hpp"
#include "coverph/quotient.hpp"

namespace coverph {

// Sparse chain over the basis of one bigraded spot S_{p,q}: basis index ->
// nonzero residue.
using Chain = std::map<int, int>;

// A chain of total degree n in the total complex: one component per column p,
// the component at column p lying in S_{p, n-p}. Zero components are absent.
struct TotalChain {
    int n = 0;
    std::map<int, Chain> comp;

    bool is_zero() const { return comp.empty(); }
    const Chain* at(int p) const {
        auto it = comp.find(p);
        return it == comp.end() ? nullptr : &it->second;
    }
};

// dst += t * src over GF(p), dropping entries that cancel.
void chain_axpy(Chain& dst, int t, const Chain& src, const PrimeField& F);
void total_axpy(TotalChain& dst, int t, const TotalChain& src, const PrimeField& F);

// The cover double complex S_{p,q} = ⊕_{σ∈N_p} S_q(U_σ) with vertical
// simplicial boundaries d and horizontal differential δ̄ = (−1)^q δ, both
// precomputed as sparse columns. Rows/columns of each spot follow the
// cech_module layout: blocks σ in lexicographic order, simplices in complex
// order within a block.
class DoubleComplex {
public:
    DoubleComplex(const CoverAssignment& cover, const Nerve& nerve, const PrimeField& F);

    int pmax() const { return pmax_; }
    int qmax() const { return qmax_; }
    const PrimeField& field() const { return F_; }
    const CoverAssignment& cover() const { return *cover_; }
    const Nerve& nerve() const { return *nerve_; }

    bool in_range(int p, int q) const { return p >= 0 && p <= pmax_ && q >= 0 && q <= qmax_; }
    const CechModule& mod(int p, int q) const;
    int dim(int p, int q) const { return in_range(p, q) ? mod(p, q).basis.size() : 0; }
    Filt filt(int p, int q, int i) const { return mod(p, q).basis.bar(i).birth; }

    Chain vertical(int p, int q, const Chain& x) const;   // d: lands at (p, q-1)
    Chain horizontal(int p, int q, const Chain& x) const; // δ̄: lands at (p-1, q)

    // Component of d^Tot(x) at column p, i.e. at position (p, x.n - 1 - p).
    Chain dtot_component(const TotalChain& x, int p) const;
    TotalChain dtot(const TotalChain& x) const;

private:
    const CoverAssignment* cover_;
    const Nerve* nerve_;
    PrimeField F_;
    int pmax_ = -1;
    int qmax_ = -1;
    std::vector<std::vector<CechModule>> mods_; // [p][q]
    // Sparse columns: per (p,q), per basis column, list of (row, coeff).
    using SparseCols = std::vector<std::vector<std::pair<int, int>>>;
    std::vector<std::vector<SparseCols>> vcols_; // into (p, q-1)
    std::vector<std::vector<SparseCols>> hcols_; // into (p-1, q), sign (−1)^q included
};

// Zero-page data: per position (p,q), the local homology generators E^1_{p,q}
// with representative chains, and the Im(d_{q+1}) generators with vertical
// preimages, merged over the blocks σ ∈ N_p in lexicographic order.
struct LocalGen {
    Interval bar;
    int block = 0;
    Chain chain;    // in S_{p,q}
    Chain preimage; // im generators only: chain in S_{p,q+1} with d(preimage) = chain
};

struct ZeroPageEntry {
    std::vector<LocalGen> e1;
    std::vector<LocalGen> im;
};

struct ZeroPageResult {
    std::vector<std::vector<ZeroPageEntry>> at; // [p][q]
    std::vector<double> task_seconds;           // one local reduction per σ, (p, lex) order
};

// Local persistent homology of every U_σ, run as one task per σ (concurrent
// up to `workers`, merged in fixed order).
ZeroPageResult zero_page(const DoubleComplex& dc, int workers);

} // namespace coverph
