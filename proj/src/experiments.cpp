#include "planted/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>
#include <variant>

#include "planted/errors.hpp"
#include "planted/numeric.hpp"
#include "planted/reconstruct.hpp"
#include "planted/rng.hpp"

namespace planted {

namespace {

struct TrialOutcome {
    bool fp = false;
    bool fn = false;
    double overlap_fraction = 0.0;
    bool has_overlap = false;
};

DetectionResult detect_one(const Graph& g, const TrialConfig& cfg) {
    switch (cfg.detector) {
    case TestKind::components:
        return component_count_test(g, cfg.size);
    case TestKind::kpath:
        return k_path_test(g, cfg.size);
    case TestKind::star:
        return star_test(g, cfg.size);
    case TestKind::dary:
        return dary_test(g, cfg.dary_D, cfg.size);
    }
    throw usage_error("unknown detector");
}

ReconstructionResult reconstruct_one(const Graph& g, const PlantSpec& spec,
                                     std::uint64_t recon_seed) {
    if (const auto* line = std::get_if<Line>(&spec))
        return reconstruct_line(g, line->K);
    if (const auto* star = std::get_if<Star>(&spec))
        return reconstruct_star(g, star->K, recon_seed);
    throw usage_error("reconstruction is only defined for line and star");
}

void run_one(const TrialConfig& cfg, std::uint64_t cell_seed, std::uint64_t t,
             TrialOutcome& out) {
    const Graph g0 =
        sample_er(cfg.n, cfg.lambda, derive_seed(cell_seed, kSeedTagH0, t));
    out.fp = detect_one(g0, cfg).decision == Decision::H1;
    if (!cfg.spec) return;

    const Graph base =
        sample_er(cfg.n, cfg.lambda, derive_seed(cell_seed, kSeedTagH1, t));
    const Instance inst =
        plant(base, *cfg.spec, derive_seed(cell_seed, kSeedTagPlant, t),
              cfg.lambda);
    const DetectionResult d1 = detect_one(inst.graph, cfg);
    out.fn = d1.decision == Decision::H0;
    if (out.fn && cfg.detector == TestKind::kpath && d1.exact)
        throw error("harness self-check failed: exact search missed a "
                    "planted path");

    if (cfg.reconstruct) {
        ReconstructionResult rec = reconstruct_one(
            inst.graph, *cfg.spec, derive_seed(cell_seed, kSeedTagRecon, t));
        const auto& truth = inst.truth->planted_vertices;
        out.overlap_fraction =
            static_cast<double>(overlap(rec.estimated, truth)) /
            static_cast<double>(truth.size());
        out.has_overlap = true;
    }
}

void check_size_matches_spec(const TrialConfig& cfg) {
    if (!cfg.spec) return;
    const bool ok = std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DaryTree>)
                return s.h == cfg.size && s.D == cfg.dary_D;
            else
                return s.K == cfg.size;
        },
        *cfg.spec);
    if (!ok) throw usage_error("cell size does not match the plant spec");
}

} // namespace

CellStats run_trials(const TrialConfig& cfg) {
    if (cfg.trials < 1) throw usage_error("trials must be >= 1");
    check_size_matches_spec(cfg);

    const std::uint64_t cell_seed =
        derive_seed(cfg.master_seed, kSeedTagCell, cfg.cell_id);
    std::vector<TrialOutcome> outcomes(cfg.trials);

    std::uint64_t workers = cfg.threads;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<std::uint64_t>(workers, cfg.trials);

    if (workers <= 1) {
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
            run_one(cfg, cell_seed, t, outcomes[t]);
    } else {
        const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::uint64_t lo = w * chunk;
                const std::uint64_t hi = std::min(lo + chunk, cfg.trials);
                try {
                    for (std::uint64_t t = lo; t < hi; ++t)
                        run_one(cfg, cell_seed, t, outcomes[t]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    // Ordered reduction: outcomes are aggregated in trial order so the cell
    // statistics do not depend on the thread partition.
    std::uint64_t fp = 0, fn = 0;
    KahanSum frac;
    bool any_overlap = false;
    for (const TrialOutcome& out : outcomes) {
        fp += out.fp;
        fn += out.fn;
        if (out.has_overlap) {
            frac.add(out.overlap_fraction);
            any_overlap = true;
        }
    }

    CellStats stats;
    stats.lambda = cfg.lambda;
    stats.size = cfg.size;
    stats.trials = cfg.trials;
    stats.fpr = static_cast<double>(fp) / static_cast<double>(cfg.trials);
    if (cfg.spec)
        stats.fnr = static_cast<double>(fn) / static_cast<double>(cfg.trials);
    if (any_overlap)
        stats.mean_overlap_fraction =
            frac.value() / static_cast<double>(cfg.trials);
    return stats;
}

SweepTable sweep(const std::vector<double>& lambdas,
                 const std::vector<std::uint64_t>& sizes,
                 const TrialConfig& base) {
    if (lambdas.empty() || sizes.empty())
        throw usage_error("sweep grid is empty");

    SweepTable table;
    table.lambdas = lambdas;
    table.sizes = sizes;
    for (std::size_t row = 0; row < lambdas.size(); ++row) {
        for (std::size_t col = 0; col < sizes.size(); ++col) {
            TrialConfig cfg = base;
            cfg.lambda = lambdas[row];
            cfg.size = sizes[col];
            cfg.cell_id = row * sizes.size() + col;
            if (base.spec) {
                cfg.spec = std::visit(
                    [&](const auto& s) -> PlantSpec {
                        using T = std::decay_t<decltype(s)>;
                        if constexpr (std::is_same_v<T, DaryTree>) {
                            cfg.dary_D = s.D;
                            return DaryTree{s.D,
                                            static_cast<std::uint32_t>(cfg.size)};
                        } else if constexpr (std::is_same_v<T, Star>) {
                            return Star{static_cast<std::uint32_t>(cfg.size)};
                        } else {
                            return Line{static_cast<std::uint32_t>(cfg.size)};
                        }
                    },
                    *base.spec);
            }
            table.cells.push_back(run_trials(cfg));
        }
    }
    return table;
}

namespace {

std::string format_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << body;
    out.flush();
    if (!out) throw io_error("failed while writing " + path);
}

} // namespace

std::string csv_string(const SweepTable& table) {
    std::string out = "lambda,size,trials,fpr,fnr,mean_overlap_fraction\n";
    for (const CellStats& c : table.cells) {
        out += format_num(c.lambda);
        out += ',';
        out += std::to_string(c.size);
        out += ',';
        out += std::to_string(c.trials);
        out += ',';
        out += format_num(c.fpr);
        out += ',';
        if (c.fnr) out += format_num(*c.fnr);
        out += ',';
        if (c.mean_overlap_fraction) out += format_num(*c.mean_overlap_fraction);
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepTable& table, const std::string& path) {
    write_file(path, csv_string(table));
}

std::string svg_string(const SweepTable& table, const std::string& metric) {
    int which;
    if (metric == "fpr") which = 0;
    else if (metric == "fnr") which = 1;
    else if (metric == "mean_overlap_fraction") which = 2;
    else throw usage_error("unknown heatmap metric: " + metric);

    const std::size_t rows = table.lambdas.size();
    const std::size_t cols = table.sizes.size();
    constexpr int cell_w = 44, cell_h = 26, left = 64, top = 34, pad = 8;
    const std::size_t width = left + cols * cell_w + pad;
    const std::size_t height = top + rows * cell_h + pad;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" +
                      std::to_string(height) +
                      "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (std::size_t col = 0; col < cols; ++col)
        svg += "<text x=\"" +
               std::to_string(left + col * cell_w + cell_w / 2) + "\" y=\"" +
               std::to_string(top - 8) + "\" text-anchor=\"middle\">" +
               std::to_string(table.sizes[col]) + "</text>\n";
    for (std::size_t row = 0; row < rows; ++row)
        svg += "<text x=\"" + std::to_string(left - 8) + "\" y=\"" +
               std::to_string(top + row * cell_h + cell_h / 2 + 4) +
               "\" text-anchor=\"end\">" + format_num(table.lambdas[row]) +
               "</text>\n";

    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t col = 0; col < cols; ++col) {
            const CellStats& c = table.cells[row * cols + col];
            std::optional<double> value;
            if (which == 0) value = c.fpr;
            else if (which == 1) value = c.fnr;
            else value = c.mean_overlap_fraction;

            std::string fill = "none";
            if (value) {
                const double v = std::clamp(*value, 0.0, 1.0);
                const int gray =
                    255 - static_cast<int>(std::lround(255.0 * v));
                char buf[8];
                std::snprintf(buf, sizeof buf, "#%02x%02x%02x", gray, gray,
                              gray);
                fill = buf;
            }
            svg += "<rect class=\"cell\" x=\"" +
                   std::to_string(left + col * cell_w) + "\" y=\"" +
                   std::to_string(top + row * cell_h) + "\" width=\"" +
                   std::to_string(cell_w) + "\" height=\"" +
                   std::to_string(cell_h) + "\" fill=\"" + fill +
                   "\" stroke=\"#808080\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

void emit_svg_heatmap(const SweepTable& table, const std::string& metric,
                      const std::string& path) {
    write_file(path, svg_string(table, metric));
}

} // namespace planted
