#pragma once

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "coverph/errors.hpp"

namespace coverph {

// Runs f(0..count-1) across `workers` threads with static contiguous
// chunking by index, collecting results in index order. The output is
// identical, bit for bit, to sequential execution: tasks must be pure and
// independent, and each result lands in its own slot. If any task throws,
// the whole batch fails with an error naming the lowest failing index.
template <typename Result, typename Fn>
std::vector<Result> parallel_map_deterministic(int count, int workers, Fn&& f) {
    if (count < 0) throw UsageError("parallel_map_deterministic: negative task count");
    if (workers < 1) throw UsageError("parallel_map_deterministic: need at least one worker");
    std::vector<Result> results(static_cast<std::size_t>(count));
    if (count == 0) return results;
    workers = std::min(workers, count);

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    auto run_range = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            try {
                results[static_cast<std::size_t>(i)] = f(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };

    if (workers == 1) {
        run_range(0, count);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int lo = w * chunk;
            int hi = std::min(count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    for (int i = 0; i < count; ++i)
        if (errors[static_cast<std::size_t>(i)]) {
            const std::string tag = "task " + std::to_string(i) + " failed: ";
            try {
                std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
            } catch (const InternalConsistencyError& e) {
                throw InternalConsistencyError(tag + e.what());
            } catch (const CoverViolationError& e) {
                throw CoverViolationError(tag + e.what());
            } catch (const ConfigError& e) {
                throw ConfigError(tag + e.what());
            } catch (const std::exception& e) {
                throw UsageError(tag + e.what());
            } catch (...) {
                throw UsageError("task " + std::to_string(i) + " failed");
            }
        }
    return results;
}

} // namespace coverph
