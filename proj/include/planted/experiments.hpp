#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planted/detect.hpp"
#include "planted/plant.hpp"

namespace planted {

// Seed-stream tags. Every trial derives its generators as
// derive_seed(derive_seed(master_seed, kSeedTagCell, cell_id), tag, trial),
// so H0 sampling, H1 sampling, placement, and reconstruction draw from
// disjoint deterministic streams.
inline constexpr std::uint64_t kSeedTagCell = 0x63656C6C;  // "cell"
inline constexpr std::uint64_t kSeedTagH0 = 0x6E756C6C;    // "null"
inline constexpr std::uint64_t kSeedTagH1 = 0x62617365;    // "base"
inline constexpr std::uint64_t kSeedTagPlant = 0x706C6E74; // "plnt"
inline constexpr std::uint64_t kSeedTagRecon = 0x72636F6E; // "rcon"

struct TrialConfig {
    std::uint64_t n = 0;
    double lambda = 0.0;
    std::optional<PlantSpec> spec; // absent: H0-only cell, fpr only
    TestKind detector = TestKind::kpath;
    std::uint64_t size = 0; // K for components/kpath/star, h for dary
    std::uint32_t dary_D = 2;
    bool reconstruct = false;
    std::uint64_t master_seed = 0;
    std::uint64_t trials = 1;
    std::uint64_t threads = 1; // 0 = all hardware threads
    std::uint64_t cell_id = 0;
};

struct CellStats {
    double lambda = 0.0;
    std::uint64_t size = 0;
    std::uint64_t trials = 0;
    double fpr = 0.0;
    std::optional<double> fnr;                   // absent without a plant spec
    std::optional<double> mean_overlap_fraction; // absent without reconstruct
    bool operator==(const CellStats&) const = default;
};

struct SweepTable {
    std::vector<double> lambdas;
    std::vector<std::uint64_t> sizes;
    std::vector<CellStats> cells; // row-major, lambda outer, size inner
    bool operator==(const SweepTable&) const = default;
};

// Paired H0/H1 Monte Carlo for one cell. Deterministic for a given
// master_seed and cell_id no matter how many threads run the trials.
CellStats run_trials(const TrialConfig& cfg);

// run_trials over the full lambda x size grid; base supplies everything else
// and its plant spec (if any) is resized per cell.
SweepTable sweep(const std::vector<double>& lambdas,
                 const std::vector<std::uint64_t>& sizes,
                 const TrialConfig& base);

std::string csv_string(const SweepTable& table);
void emit_csv(const SweepTable& table, const std::string& path);

// Grayscale heatmap, one rect per cell; metric is one of "fpr", "fnr",
// "mean_overlap_fraction".
std::string svg_string(const SweepTable& table, const std::string& metric);
void emit_svg_heatmap(const SweepTable& table, const std::string& metric,
                      const std::string& path);

} // namespace planted
