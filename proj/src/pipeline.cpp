#include "coverph/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coverph/errors.hpp"
#include "coverph/oracle.hpp"
#include "coverph/spectral.hpp"

namespace coverph {

std::string format_filt(Filt v) {
    if (!(v < kInfFilt)) return "inf";
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::vector<std::vector<double>> read_point_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read input file: " + path);
    std::vector<std::vector<double>> points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> pt;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
            if (end == cell.c_str() || (end && *end != '\0'))
                throw ConfigError("bad number '" + cell + "' at line " + std::to_string(lineno) +
                                  " of " + path);
            pt.push_back(v);
        }
        if (!points.empty() && pt.size() != points.front().size())
            throw ConfigError("inconsistent point dimension at line " + std::to_string(lineno) +
                              " of " + path);
        points.push_back(std::move(pt));
    }
    if (points.empty()) throw ConfigError("no points in " + path);
    return points;
}

namespace {

std::string format_sources(const std::vector<std::pair<int, int>>& sources) {
    std::string out;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (i) out += "+";
        out += "(" + std::to_string(sources[i].first) + "," + std::to_string(sources[i].second) +
               ")";
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path.string());
    out << content;
}

} // namespace

RunResult run_pipeline(const RunConfig& config) {
    try {
        if (config.max_dim < 0) throw ConfigError("max_dim must be >= 0");
        if (!(config.max_filt >= 0)) throw ConfigError("max_filt must be >= 0");
        if (config.divisions.empty()) throw ConfigError("divisions must not be empty");
        for (int d : config.divisions)
            if (d < 1) throw ConfigError("divisions must be >= 1");
        if (config.workers < 1) throw ConfigError("workers must be >= 1");
        const PrimeField F(config.prime); // validates primality
        const Filt overlap = config.overlap < 0 ? 2 * config.max_filt : config.overlap;

        const auto points = read_point_csv(config.input);
        std::filesystem::create_directories(config.out_dir);

        // One division count per point axis; missing trailing axes get 1.
        std::vector<int> divisions = config.divisions;
        if (divisions.size() > points.front().size())
            throw ConfigError("more division axes than point coordinates");
        divisions.resize(points.front().size(), 1);

        const FilteredComplex X = vietoris_rips(points, config.max_dim, config.max_filt);
        const CoverAssignment cover = cubical_cover(X, points, divisions, overlap);
        const Nerve N = nerve(cover);

        SpectralEngine engine(cover, N, F, config.workers);
        try {
            engine.run();
        } catch (const UsageError& e) {
            // Inside the engine every precondition is a theorem; a violation
            // is an internal failure, not bad input.
            throw InternalConsistencyError(e.what());
        }

        // Page tables.
        std::string pages = "page,p,q,birth,death\n";
        for (int r = 1; r <= engine.page_limit(); ++r)
            for (int p = 0; p <= engine.complex().pmax(); ++p)
                for (int q = 0; q <= engine.complex().qmax(); ++q)
                    for (const PageGen& g : engine.page(r, p, q).gens)
                        pages += std::to_string(r) + "," + std::to_string(p) + "," +
                                 std::to_string(q) + "," + format_filt(g.bar.birth) + "," +
                                 format_filt(g.bar.death) + "\n";
        write_file(std::filesystem::path(config.out_dir) / "pages.csv", pages);

        // Barcodes with gluing provenance.
        for (int n = 0; n <= config.max_dim; ++n) {
            std::string csv = "birth,death,source_page_positions\n";
            for (const AssembledBar& b : engine.homology(n))
                csv += format_filt(b.bar.birth) + "," + format_filt(b.bar.death) + "," +
                       format_sources(b.sources) + "\n";
            write_file(std::filesystem::path(config.out_dir) /
                           ("ph_" + std::to_string(n) + ".csv"),
                       csv);
        }

        if (config.check_oracle) {
            const auto oracle = standard_reduction_ph(X, config.max_dim, F);
            bool ok = true;
            std::string verdict;
            for (int n = 0; n <= config.max_dim; ++n) {
                std::vector<Interval> got;
                for (const AssembledBar& b : engine.homology(n)) got.push_back(b.bar);
                std::vector<Interval> want = oracle[static_cast<std::size_t>(n)];
                std::sort(got.begin(), got.end(), bar_less);
                std::sort(want.begin(), want.end(), bar_less);
                const bool match = got == want;
                ok = ok && match;
                verdict += "n=" + std::to_string(n) + ": " + (match ? "PASS" : "MISMATCH") +
                           " (" + std::to_string(got.size()) + " bars vs " +
                           std::to_string(want.size()) + ")\n";
            }
            verdict += std::string("VERDICT: ") + (ok ? "PASS" : "MISMATCH") + "\n";
            write_file(std::filesystem::path(config.out_dir) / "verdict.txt", verdict);
            if (!ok) return {4, "oracle mismatch; see verdict.txt"};
        }
        return {0, "ok"};
    } catch (const ConfigError& e) {
        return {2, e.what()};
    } catch (const CoverViolationError& e) {
        return {3, e.what()};
    } catch (const InternalConsistencyError& e) {
        return {5, e.what()};
    } catch (const UsageError& e) {
        return {5, e.what()};
    }
}

} // namespace coverph
