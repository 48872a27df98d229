#pragma once

#include <string>
#include <vector>

#include "coverph/interval.hpp"

namespace coverph {

// Configuration of one end-to-end run: point cloud in, barcode files out.
struct RunConfig {
    std::string input;           // CSV point cloud, one point per line, no header
    int max_dim = 2;             // top simplex dimension of the Vietoris-Rips complex
    Filt max_filt = 1.0;         // Vietoris-Rips distance cutoff
    int prime = 5;               // field modulus
    std::vector<int> divisions;  // grid cover divisions per axis; {1,...} = trivial cover
    Filt overlap = -1.0;         // box enlargement; negative = 2 * max_filt (always valid)
    int workers = 1;
    bool check_oracle = false;   // also run direct reduction and compare
    std::string out_dir = ".";
};

// Exit status of a pipeline run, mirrored by the CLI process exit code:
// 0 ok, 2 bad configuration or unreadable input, 3 cover violation,
// 4 oracle mismatch, 5 internal consistency failure.
struct RunResult {
    int exit_code = 0;
    std::string message;
};

// Runs the full pipeline and writes, under out_dir:
//   ph_<n>.csv   one file per degree n = 0..max_dim, columns
//                birth,death,source_page_positions (death "inf" when
//                essential; positions like "(1,0)+(0,1)")
//   pages.csv    every page generator, columns page,p,q,birth,death
//   verdict.txt  when check_oracle is set: per-degree PASS/MISMATCH lines
//                and a final verdict
// Output bytes are a deterministic function of (input bytes, config).
RunResult run_pipeline(const RunConfig& config);

// CSV point reader: one point per line, coordinates separated by commas,
// blank lines ignored. Throws ConfigError on unreadable or ragged input.
std::vector<std::vector<double>> read_point_csv(const std::string& path);

// Shortest decimal form of a filtration value that parses back to the same
// double; infinity rendered as "inf".
std::string format_filt(Filt v);

} // namespace coverph
