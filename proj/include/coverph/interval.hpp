#pragma once

#include <limits>

namespace coverph {

// Filtration parameters are doubles with +inf as the sentinel for essential
// classes; comparisons and deduplication are exact (no epsilon) because all
// values originate from one shared distance computation.
using Filt = double;

inline constexpr Filt kInfFilt = std::numeric_limits<double>::infinity();

// The half-open bar [birth, death). birth == death denotes the zero module.
struct Interval {
    Filt birth = 0;
    Filt death = 0;

    bool alive_at(Filt r) const { return birth <= r && r < death; }
    bool degenerate() const { return !(birth < death); }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.birth == b.birth && a.death == b.death;
    }
};

// Basis order: earlier birth first; among equal births, later death first.
// Full ties keep insertion order (callers use stable sorts).
inline bool bar_less(const Interval& a, const Interval& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death > b.death;
}

} // namespace coverph
