#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "planted/errors.hpp"
#include "planted/experiments.hpp"
#include "planted/plant.hpp"

using namespace planted;

namespace {

TrialConfig noiseless_line_cell() {
    TrialConfig cfg;
    cfg.n = 30;
    cfg.lambda = 0.0;
    cfg.spec = Line{5};
    cfg.detector = TestKind::kpath;
    cfg.size = 5;
    cfg.reconstruct = true;
    cfg.master_seed = 7;
    cfg.trials = 10;
    cfg.threads = 1;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::size_t count_occurrences(const std::string& hay, const std::string& pin) {
    std::size_t n = 0;
    for (std::size_t at = hay.find(pin); at != std::string::npos;
         at = hay.find(pin, at + pin.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("noiseless planted line cell is perfect") {
    const auto stats = run_trials(noiseless_line_cell());
    CHECK(stats.lambda == 0.0);
    CHECK(stats.size == 5);
    CHECK(stats.trials == 10);
    CHECK(stats.fpr == 0.0);
    REQUIRE(stats.fnr.has_value());
    CHECK(*stats.fnr == 0.0);
    REQUIRE(stats.mean_overlap_fraction.has_value());
    CHECK(*stats.mean_overlap_fraction == 1.0);
}

TEST_CASE("trial cells are reproducible and thread-count invariant") {
    auto cfg = noiseless_line_cell();
    cfg.n = 200;
    cfg.lambda = 0.8;
    cfg.trials = 16;
    const auto once = run_trials(cfg);
    const auto again = run_trials(cfg);
    CHECK(once == again);

    auto parallel = cfg;
    parallel.threads = 4;
    CHECK(run_trials(parallel) == once);
}

TEST_CASE("subcritical path cell separates cleanly") {
    TrialConfig cfg;
    cfg.n = 2000;
    cfg.lambda = 0.5;
    cfg.spec = Line{35};
    cfg.detector = TestKind::kpath;
    cfg.size = 35;
    cfg.master_seed = 1;
    cfg.trials = 30;
    const auto stats = run_trials(cfg);
    CHECK(stats.fpr == 0.0);
    CHECK(*stats.fnr == 0.0);
    CHECK(!stats.mean_overlap_fraction.has_value());
}

TEST_CASE("run_trials validates its configuration") {
    auto cfg = noiseless_line_cell();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_trials(cfg), usage_error);

    auto mismatched = noiseless_line_cell();
    mismatched.size = 6; // spec says Line{5}
    CHECK_THROWS_AS(run_trials(mismatched), usage_error);

    auto dary_recon = noiseless_line_cell();
    dary_recon.n = 20;
    dary_recon.spec = DaryTree{2, 2};
    dary_recon.detector = TestKind::dary;
    dary_recon.size = 2;
    dary_recon.reconstruct = true;
    CHECK_THROWS_AS(run_trials(dary_recon), usage_error);
}

TEST_CASE("dary sweep rebuilds the spec per cell") {
    TrialConfig base;
    base.n = 15;
    base.spec = DaryTree{3, 1};
    base.detector = TestKind::dary;
    base.dary_D = 3;
    base.master_seed = 3;
    base.trials = 2;
    const auto table = sweep({0.0}, {1, 2}, base);
    REQUIRE(table.cells.size() == 2);
    CHECK(table.cells[0].size == 1);
    CHECK(table.cells[1].size == 2);
    CHECK(*table.cells[0].fnr == 0.0);
    CHECK(*table.cells[1].fnr == 0.0);
}

TEST_CASE("sweep lays cells out row-major") {
    TrialConfig base;
    base.n = 12;
    base.spec = Line{2};
    base.detector = TestKind::kpath;
    base.master_seed = 5;
    base.trials = 2;
    const auto table = sweep({0.0, 0.5}, {2, 3}, base);
    CHECK(table.lambdas == std::vector<double>{0.0, 0.5});
    CHECK(table.sizes == std::vector<std::uint64_t>{2, 3});
    REQUIRE(table.cells.size() == 4);
    CHECK(table.cells[1].lambda == 0.0);
    CHECK(table.cells[1].size == 3);
    CHECK(table.cells[2].lambda == 0.5);
    CHECK(table.cells[2].size == 2);

    CHECK_THROWS_AS(sweep({}, {2}, base), usage_error);
    CHECK_THROWS_AS(sweep({0.5}, {}, base), usage_error);
}

TEST_CASE("csv output is exact for a tiny deterministic sweep") {
    TrialConfig base;
    base.n = 10;
    base.spec = Line{3};
    base.detector = TestKind::kpath;
    base.reconstruct = true;
    base.master_seed = 2;
    base.trials = 2;
    const auto table = sweep({0.0}, {3}, base);
    CHECK(csv_string(table) ==
          "lambda,size,trials,fpr,fnr,mean_overlap_fraction\n"
          "0,3,2,0,0,1\n");
}

TEST_CASE("csv leaves planted-only columns empty under the null") {
    TrialConfig base;
    base.n = 10;
    base.detector = TestKind::kpath;
    base.master_seed = 2;
    base.trials = 2;
    const auto table = sweep({0.0}, {3}, base);
    CHECK(csv_string(table) ==
          "lambda,size,trials,fpr,fnr,mean_overlap_fraction\n"
          "0,3,2,0,,\n");
}

TEST_CASE("csv and svg files round trip byte for byte") {
    TrialConfig base;
    base.n = 10;
    base.spec = Line{3};
    base.detector = TestKind::kpath;
    base.master_seed = 4;
    base.trials = 2;
    const auto table = sweep({0.0, 0.5}, {2, 3}, base);

    const auto dir = std::filesystem::temp_directory_path();
    const auto csv_path = dir / "planted_test_sweep.csv";
    const auto svg_path = dir / "planted_test_sweep.svg";
    emit_csv(table, csv_path.string());
    emit_svg_heatmap(table, "fnr", svg_path.string());
    CHECK(slurp(csv_path) == csv_string(table));
    CHECK(slurp(svg_path) == svg_string(table, "fnr"));
    std::filesystem::remove(csv_path);
    std::filesystem::remove(svg_path);
}

TEST_CASE("svg heatmap structure") {
    TrialConfig base;
    base.n = 10;
    base.spec = Line{3};
    base.detector = TestKind::kpath;
    base.master_seed = 4;
    base.trials = 2;
    const auto table = sweep({0.0, 0.5}, {2, 3}, base);

    const auto svg = svg_string(table, "fpr");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count_occurrences(svg, "class=\"cell\"") == 4);
    CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") !=
          std::string::npos);

    TrialConfig h0_base = base;
    h0_base.spec.reset();
    const auto h0 = sweep({0.0}, {2}, h0_base);
    CHECK(svg_string(h0, "fnr").find("fill=\"none\"") != std::string::npos);

    CHECK_THROWS_AS(svg_string(table, "bogus"), usage_error);
}
