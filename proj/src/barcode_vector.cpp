#include "coverph/barcode_vector.hpp"

#include <algorithm>

#include "coverph/errors.hpp"

namespace coverph {

BarcodeVector make_vector(const BarcodeBasis& basis, std::map<int, int> coeffs, Filt step,
                          const PrimeField& F) {
    BarcodeVector v;
    v.basis_uid = basis.uid();
    v.step = step;

    Filt birth = step;
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        it->second = F.normalize(it->second);
        if (it->second == 0) {
            it = coeffs.erase(it);
        } else {
            birth = std::max(birth, basis.bar(it->first).birth);
            ++it;
        }
    }
    // Drop coefficients on bars already dead at the threshold. The bar
    // achieving the max birth survives (death > birth), so one pass settles.
    Filt death = birth;
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (basis.bar(it->first).death <= birth) {
            it = coeffs.erase(it);
        } else {
            death = std::max(death, basis.bar(it->first).death);
            ++it;
        }
    }
    if (coeffs.empty()) {
        v.assoc = Interval{0, 0};
    } else {
        v.coeffs = std::move(coeffs);
        v.assoc = Interval{birth, death};
    }
    return v;
}

BarcodeVector unit_vector(const BarcodeBasis& basis, int i) {
    BarcodeVector v;
    v.basis_uid = basis.uid();
    v.coeffs[i] = 1;
    v.step = basis.bar(i).birth;
    v.assoc = basis.bar(i);
    return v;
}

BarcodeVector bar_sum(const BarcodeBasis& basis, const PrimeField& F,
                      const std::vector<std::pair<int, const BarcodeVector*>>& terms) {
    std::map<int, long long> acc;
    Filt step = -kInfFilt;
    bool any = false;
    for (const auto& [k, vec] : terms) {
        if (vec->basis_uid != basis.uid())
            throw UsageError("bar_sum: terms refer to different barcode bases");
        int kn = F.normalize(k);
        if (kn == 0 || vec->is_zero()) continue;
        any = true;
        step = std::max(step, vec->assoc.birth);
        for (const auto& [idx, c] : vec->coeffs) acc[idx] += static_cast<long long>(kn) * c;
    }
    if (!any) {
        BarcodeVector zero;
        zero.basis_uid = basis.uid();
        return zero;
    }
    std::map<int, int> coeffs;
    for (const auto& [idx, c] : acc) coeffs[idx] = F.normalize(c);
    return make_vector(basis, std::move(coeffs), step, F);
}

BarcodeVector apply_step(Filt s, const BarcodeVector& v, const BarcodeBasis& basis,
                         const PrimeField& F) {
    if (v.basis_uid != basis.uid()) throw UsageError("apply_step: vector is over a different basis");
    if (v.is_zero() || s <= v.assoc.birth) return v;
    return make_vector(basis, v.coeffs, std::max(v.step, s), F);
}

std::map<int, int> evaluate_at(const BarcodeVector& v, const BarcodeBasis& basis, Filt r) {
    std::map<int, int> out;
    if (v.is_zero() || r < v.assoc.birth) return out;
    for (const auto& [idx, c] : v.coeffs)
        if (basis.bar(idx).alive_at(r)) out[idx] = c;
    return out;
}

} // namespace coverph
