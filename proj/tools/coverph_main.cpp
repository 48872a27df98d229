#include <cstdio>
#include <cstdlib>

#include "CLI11.hpp"
#include "coverph/pipeline.hpp"

int main(int argc, char** argv) {
    coverph::RunConfig config;
    if (const char* env = std::getenv("COVERPH_WORKERS")) config.workers = std::atoi(env);

    CLI::App app{"Persistent homology of a covered point cloud via the "
                 "Mayer-Vietoris spectral sequence"};
    app.add_option("input", config.input, "Point cloud CSV (one point per line, no header)")
        ->required();
    app.add_option("--max-dim", config.max_dim, "Top Vietoris-Rips simplex dimension")
        ->capture_default_str();
    app.add_option("--max-filt", config.max_filt, "Vietoris-Rips distance cutoff")->required();
    app.add_option("--prime", config.prime, "Field modulus (prime)")->capture_default_str();
    app.add_option("--divisions", config.divisions,
                   "Grid cover divisions per axis, e.g. 2,2 (default: trivial cover)")
        ->delimiter(',');
    app.add_option("--overlap", config.overlap,
                   "Cover box enlargement (default: 2 * max-filt, always a valid cover)");
    app.add_option("--workers", config.workers, "Concurrent local reductions")
        ->capture_default_str();
    app.add_flag("--check-oracle", config.check_oracle,
                 "Also run direct reduction and write verdict.txt");
    app.add_option("--out", config.out_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad flags are configuration errors
    }
    if (config.divisions.empty()) config.divisions = {1};

    const coverph::RunResult result = coverph::run_pipeline(config);
    if (result.exit_code == 0)
        std::printf("%s\n", result.message.c_str());
    else
        std::fprintf(stderr, "error: %s\n", result.message.c_str());
    return result.exit_code;
}
