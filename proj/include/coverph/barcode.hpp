#pragma once

#include <atomic>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "coverph/interval.hpp"

namespace coverph {

// An ordered list of bars naming the generators of a tame persistence module.
// Each basis carries a unique identity token so that vectors can detect when
// they are combined across different bases. Copies keep the token: a copy is
// the same mathematical basis.
class BarcodeBasis {
public:
    BarcodeBasis() : uid_(next_uid()) {}
    explicit BarcodeBasis(std::vector<Interval> bars) : bars_(std::move(bars)), uid_(next_uid()) {}

    const std::vector<Interval>& bars() const { return bars_; }
    const Interval& bar(int i) const { return bars_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(bars_.size()); }
    std::uint64_t uid() const { return uid_; }

private:
    static std::uint64_t next_uid() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1);
    }

    std::vector<Interval> bars_;
    std::uint64_t uid_ = 0;
};

// Sorts bars into basis order (birth asc, death desc, insertion-stable) and
// drops degenerate bars.
BarcodeBasis make_sorted_basis(std::vector<Interval> bars);

// Indices of generators alive at r, in basis order.
std::vector<int> pointwise_basis(const BarcodeBasis& basis, Filt r);

// Sorted exact-deduplicated births and deaths of all given bases. +inf is
// kept when an essential bar contributes it; reduction sweeps skip it.
std::vector<Filt> critical_values(const std::vector<const BarcodeBasis*>& bases);
std::vector<Filt> critical_values(std::initializer_list<const BarcodeBasis*> bases);

} // namespace coverph
