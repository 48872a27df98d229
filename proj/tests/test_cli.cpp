#include <filesystem>
#include <fstream>
#include <sstream>

#include "coverph/errors.hpp"
#include "coverph/pipeline.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coverph;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("coverph_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_circle_split_csv(const fs::path& dir) {
    fs::path file = dir / "points.csv";
    std::ofstream out(file);
    for (const auto& pt : testutil::circle_split_points())
        out << pt[0] << "," << pt[1] << "\n";
    return file;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("format_filt: shortest round-trip and inf") {
    CHECK(format_filt(kInfFilt) == "inf");
    CHECK(format_filt(0.0) == "0");
    CHECK(format_filt(0.5) == "0.5");
    CHECK(format_filt(1.0) == "1");
    for (double v : {0.1, 0.3, 1.0 / 3.0, 0.8 - 0.2, 0.538516, 123456.789}) {
        std::string s = format_filt(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("read_point_csv: parsing and error cases") {
    fs::path dir = fresh_dir("csv");
    {
        std::ofstream out(dir / "good.csv");
        out << "0,0\n\n1.5, 2.25\n";
    }
    auto pts = read_point_csv((dir / "good.csv").string());
    REQUIRE(pts.size() == 2);
    CHECK(pts[1] == std::vector<double>{1.5, 2.25});

    {
        std::ofstream out(dir / "ragged.csv");
        out << "0,0\n1,2,3\n";
    }
    CHECK_THROWS_AS(read_point_csv((dir / "ragged.csv").string()), ConfigError);
    {
        std::ofstream out(dir / "junk.csv");
        out << "0,abc\n";
    }
    CHECK_THROWS_AS(read_point_csv((dir / "junk.csv").string()), ConfigError);
    CHECK_THROWS_AS(read_point_csv((dir / "missing.csv").string()), ConfigError);
}

TEST_CASE("pipeline on the split circle: files, provenance, verdict") {
    fs::path dir = fresh_dir("pipeline");
    RunConfig config;
    config.input = write_circle_split_csv(dir).string();
    config.max_dim = 2;
    config.max_filt = 1.0;
    config.divisions = {2, 1};
    config.overlap = 1.0;
    config.check_oracle = true;
    config.out_dir = (dir / "out").string();

    RunResult result = run_pipeline(config);
    CHECK(result.exit_code == 0);

    const std::string gap = format_filt(0.8 - 0.2); // length of the gap edge
    std::string ph1 = slurp(fs::path(config.out_dir) / "ph_1.csv");
    CHECK(ph1 == "birth,death,source_page_positions\n"
                 "0.5,1,(1,0)+(0,1)\n" +
                     (gap + ",1,(0,1)\n"));

    std::string pages = slurp(fs::path(config.out_dir) / "pages.csv");
    CHECK(pages.find("page,p,q,birth,death\n") == 0);
    CHECK(pages.find("2,1,0,0.5," + gap + "\n") != std::string::npos);
    CHECK(pages.find("2,0,1," + gap + ",1\n") != std::string::npos);

    std::string verdict = slurp(fs::path(config.out_dir) / "verdict.txt");
    CHECK(verdict.find("VERDICT: PASS") != std::string::npos);
    for (int n = 0; n <= 2; ++n)
        CHECK(verdict.find("n=" + std::to_string(n) + ": PASS") != std::string::npos);
}

TEST_CASE("pipeline with the trivial cover stays in column p = 0") {
    fs::path dir = fresh_dir("trivial");
    RunConfig config;
    config.input = write_circle_split_csv(dir).string();
    config.max_filt = 1.0;
    config.divisions = {1};
    config.check_oracle = true;
    config.out_dir = (dir / "out").string();

    RunResult result = run_pipeline(config);
    CHECK(result.exit_code == 0);
    std::string pages = slurp(fs::path(config.out_dir) / "pages.csv");
    std::stringstream ss(pages);
    std::string line;
    std::getline(ss, line); // header
    while (std::getline(ss, line)) {
        REQUIRE(line.size() > 2);
        CHECK(line[2] == '0'); // the p column
    }
    std::string verdict = slurp(fs::path(config.out_dir) / "verdict.txt");
    CHECK(verdict.find("VERDICT: PASS") != std::string::npos);
}

TEST_CASE("pipeline error exit codes") {
    fs::path dir = fresh_dir("errors");
    fs::path csv = write_circle_split_csv(dir);

    RunConfig config;
    config.input = csv.string();
    config.max_filt = 1.0;
    config.divisions = {2, 1};
    config.out_dir = (dir / "out").string();

    SUBCASE("missing input") {
        config.input = (dir / "nope.csv").string();
        CHECK(run_pipeline(config).exit_code == 2);
    }
    SUBCASE("non-prime modulus") {
        config.prime = 4;
        CHECK(run_pipeline(config).exit_code == 2);
    }
    SUBCASE("bad divisions") {
        config.divisions = {0, 2};
        CHECK(run_pipeline(config).exit_code == 2);
    }
    SUBCASE("cover violation") {
        config.overlap = 0.5; // too small for max_filt = 1 on this cloud
        CHECK(run_pipeline(config).exit_code == 3);
    }
}

TEST_CASE("pipeline output bytes are deterministic across runs and workers") {
    fs::path dir = fresh_dir("determinism");
    fs::path csv = write_circle_split_csv(dir);
    auto run_with = [&](const std::string& tag, int workers) {
        RunConfig config;
        config.input = csv.string();
        config.max_filt = 1.0;
        config.divisions = {2, 1};
        config.overlap = 1.0;
        config.workers = workers;
        config.check_oracle = true;
        config.out_dir = (dir / tag).string();
        REQUIRE(run_pipeline(config).exit_code == 0);
        std::string all;
        for (const char* f : {"ph_0.csv", "ph_1.csv", "ph_2.csv", "pages.csv", "verdict.txt"})
            all += slurp(fs::path(config.out_dir) / f);
        return all;
    };
    std::string a = run_with("w1a", 1);
    std::string b = run_with("w1b", 1);
    std::string c = run_with("w8", 8);
    CHECK(a == b);
    CHECK(a == c);
}
