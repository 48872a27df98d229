#include "coverph/barcode.hpp"

#include <algorithm>

namespace coverph {

BarcodeBasis make_sorted_basis(std::vector<Interval> bars) {
    bars.erase(std::remove_if(bars.begin(), bars.end(),
                              [](const Interval& b) { return b.degenerate(); }),
               bars.end());
    std::stable_sort(bars.begin(), bars.end(), bar_less);
    return BarcodeBasis(std::move(bars));
}

std::vector<int> pointwise_basis(const BarcodeBasis& basis, Filt r) {
    std::vector<int> out;
    for (int i = 0; i < basis.size(); ++i)
        if (basis.bar(i).alive_at(r)) out.push_back(i);
    return out;
}

std::vector<Filt> critical_values(std::initializer_list<const BarcodeBasis*> bases) {
    return critical_values(std::vector<const BarcodeBasis*>(bases));
}

std::vector<Filt> critical_values(const std::vector<const BarcodeBasis*>& bases) {
    std::vector<Filt> vals;
    for (const BarcodeBasis* b : bases)
        for (const Interval& bar : b->bars()) {
            vals.push_back(bar.birth);
            vals.push_back(bar.death);
        }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

} // namespace coverph
