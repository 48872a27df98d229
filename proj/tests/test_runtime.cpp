#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "coverph/runtime.hpp"

using namespace coverph;

TEST_CASE("parallel_map_deterministic: order and determinism") {
    auto task = [](int i) {
        double acc = 0;
        for (int k = 1; k <= 1000; ++k) acc += std::sin(i * 0.01 + k * 1e-3);
        return acc;
    };
    auto seq = parallel_map_deterministic<double>(64, 1, task);
    REQUIRE(seq.size() == 64);
    for (int w : {2, 3, 8}) {
        auto par = parallel_map_deterministic<double>(64, w, task);
        REQUIRE(par.size() == seq.size());
        for (std::size_t i = 0; i < seq.size(); ++i) CHECK(par[i] == seq[i]); // bitwise
    }
}

TEST_CASE("parallel_map_deterministic: empty batch") {
    auto out = parallel_map_deterministic<int>(0, 4, [](int) { return 1; });
    CHECK(out.empty());
}

TEST_CASE("parallel_map_deterministic: failure names the lowest failing index") {
    auto task = [](int i) -> int {
        if (i >= 3) throw std::runtime_error("boom");
        return i;
    };
    for (int w : {1, 4}) {
        try {
            (void)parallel_map_deterministic<int>(8, w, task);
            FAIL("expected an exception");
        } catch (const UsageError& e) {
            CHECK(std::string(e.what()).find("task 3") != std::string::npos);
        }
    }
}

TEST_CASE("parallel_map_deterministic: error classes survive the batch") {
    auto task = [](int i) -> int {
        if (i == 2) throw InternalConsistencyError("bad invariant");
        return i;
    };
    CHECK_THROWS_AS((void)parallel_map_deterministic<int>(4, 2, task), InternalConsistencyError);
    CHECK_THROWS_AS((void)parallel_map_deterministic<int>(4, 0, [](int i) { return i; }), UsageError);
}
