// planted: generate, detect, reconstruct, and analyze planted-subgraph
// instances in sparse random graphs.
//
// Exit codes: 0 success; 1 --expect mismatch or failed verify tolerance;
// 2 usage/parse/io error; 3 budget or regime error.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "planted/detect.hpp"
#include "planted/edgelist_io.hpp"
#include "planted/errors.hpp"
#include "planted/experiments.hpp"
#include "planted/graph.hpp"
#include "planted/json_io.hpp"
#include "planted/oracle.hpp"
#include "planted/plant.hpp"
#include "planted/reconstruct.hpp"
#include "planted/rng.hpp"
#include "planted/theory.hpp"

using namespace planted;
using nlohmann::json;

namespace {

// PLANTED_SEED overrides --seed wherever one is accepted.
std::uint64_t resolve_seed(std::uint64_t flag_value) {
    const char* env = std::getenv("PLANTED_SEED");
    if (!env || !*env) return flag_value;
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
        throw usage_error(std::string("PLANTED_SEED is not a valid seed: ") +
                          env);
    return v;
}

void print_json(const json& j, bool pretty) {
    std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

void print_scalar(double value, bool as_json) {
    if (as_json)
        std::cout << json(value).dump() << "\n";
    else
        std::printf("%.6f\n", value);
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
    std::uint64_t n = 0;
    double lambda = 0;
    std::string plant_spec;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& a) {
    const auto seed = resolve_seed(a.seed);
    const auto n = static_cast<Vertex>(a.n);
    if (a.n != n) throw usage_error("n does not fit in 32 bits");
    Instance inst;
    if (a.plant_spec.empty()) {
        inst.graph = sample_er(n, a.lambda, seed);
        inst.lambda = a.lambda;
        inst.seed = seed;
    } else {
        const PlantSpec spec = parse_plant_spec(a.plant_spec);
        const Graph base = sample_er(n, a.lambda, seed);
        inst = plant(base, spec, derive_seed(seed, kSeedTagPlant, 0), a.lambda);
        inst.seed = seed;
    }
    save_edgelist(inst, a.out);
    std::cerr << "wrote " << inst.graph.vertex_count() << " vertices, "
              << inst.graph.edge_count() << " edges to " << a.out << "\n";
    return 0;
}

// ---- detect ---------------------------------------------------------------

struct DetectArgs {
    std::string in;
    std::string test = "auto";
    std::optional<std::uint64_t> K;
    std::optional<std::uint32_t> D;
    std::optional<std::uint32_t> h;
    std::optional<std::uint64_t> budget;
    std::string expect;
    bool pretty = false;
    bool strict = false;
};

std::uint64_t require_k(const DetectArgs& a) {
    if (!a.K) throw usage_error("--K is required for this test");
    return *a.K;
}

int run_detect(const DetectArgs& a) {
    const Instance inst = load_edgelist(a.in);
    const Graph& g = inst.graph;

    DetectionResult res;
    if (a.test == "components") {
        res = component_count_test(g, require_k(a));
    } else if (a.test == "kpath") {
        res = a.budget ? k_path_test(g, require_k(a), *a.budget)
                       : k_path_test(g, require_k(a));
    } else if (a.test == "star") {
        res = star_test(g, require_k(a));
    } else if (a.test == "dary") {
        if (!a.D) throw usage_error("--D is required for the dary test");
        if (!a.h) throw usage_error("--h is required for the dary test");
        res = dary_test(g, *a.D, *a.h);
    } else if (a.test == "auto") {
        // Cheap intensity probe; a path statistic only helps when the graph
        // is subcritical, otherwise fall back to component counting.
        const auto probe = component_count_test(g, require_k(a));
        if (probe.stats.at("lambda_hat") < 1.0) {
            res = a.budget ? k_path_test(g, require_k(a), *a.budget)
                           : k_path_test(g, require_k(a));
        } else {
            res = probe;
        }
    } else {
        throw usage_error("unknown test: " + a.test);
    }

    print_json(json(res), a.pretty);
    std::cerr << "decision " << to_string(res.decision) << " ("
              << to_string(res.test) << (res.exact ? "" : ", budget-limited")
              << ")\n";

    if (a.strict && !res.exact)
        throw budget_error("statistic is budget-limited under --strict");
    if (!a.expect.empty() && a.expect != to_string(res.decision)) {
        std::cerr << "expected " << a.expect << ", got "
                  << to_string(res.decision) << "\n";
        return 1;
    }
    return 0;
}

// ---- reconstruct ----------------------------------------------------------

struct ReconstructArgs {
    std::string in;
    std::string method;
    std::uint64_t K = 0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> budget;
    bool pretty = false;
};

int run_reconstruct(const ReconstructArgs& a) {
    const Instance inst = load_edgelist(a.in);
    ReconstructionResult rec;
    if (a.method == "line") {
        rec = a.budget ? reconstruct_line(inst.graph, a.K, *a.budget)
                       : reconstruct_line(inst.graph, a.K);
    } else if (a.method == "star") {
        rec = reconstruct_star(inst.graph, a.K, resolve_seed(a.seed));
    } else {
        throw usage_error("unknown method: " + a.method);
    }
    if (inst.truth)
        rec.overlap = overlap(rec.estimated, inst.truth->planted_vertices);

    print_json(json(rec), a.pretty);
    if (rec.overlap)
        std::cerr << "overlap " << *rec.overlap << " of "
                  << inst.truth->planted_vertices.size() << "\n";
    else
        std::cerr << "no ground truth; overlap not computed\n";
    return 0;
}

// ---- theory ---------------------------------------------------------------

struct TheoryArgs {
    std::uint32_t D = 2;
    double lambda = 0;
    double mu = 0;
    double n = 0;
    std::uint32_t h = 1;
    std::uint64_t K = 0;
    bool pretty = false;
    bool as_json = false;
};

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& suite) {
    if (suite != "tiny") throw usage_error("unknown suite: " + suite);
    int failures = 0;
    const auto report = [&](bool ok, const std::string& what) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    const std::vector<PlantSpec> specs = {Line{2}, Line{3}, Star{2}};
    for (const Vertex n : {4u, 5u})
        for (const auto& spec : specs)
            for (const double lambda : {0.8, 1.5}) {
                const auto rep = exact_identity_check(n, spec, lambda);
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "bayes identity n=%u %s lambda=%.1f "
                              "max_err=%.3g sum_p1-1=%.3g e0_l-1=%.3g",
                              n, spec_variant(spec).c_str(), lambda,
                              rep.max_abs_error, rep.sum_p1 - 1, rep.e0_l - 1);
                report(rep.max_abs_error <= 1e-12 &&
                           std::abs(rep.sum_p1 - 1) <= 1e-12 &&
                           std::abs(rep.e0_l - 1) <= 1e-12,
                       buf);
            }

    const struct { Vertex n; std::uint32_t K; double lambda; } tuples[] = {
        {8, 3, 2.0}, {8, 4, 2.0}, {9, 3, 0.5}, {9, 4, 0.5}};
    for (const auto& [n, K, lambda] : tuples) {
        const double exact = exact_e0_l2_line(n, K, lambda);
        const double bound = markov_bound_e0l2(n, K, lambda).bound;
        char buf[120];
        std::snprintf(buf, sizeof buf,
                      "second moment n=%u K=%u lambda=%.1f exact=%.9f "
                      "bound=%.9f",
                      n, K, lambda, exact, bound);
        report(exact >= 1 - 1e-12 && exact <= bound * (1 + 1e-12), buf);
    }

    for (const double lambda : {0.5, 2.0, 5.0}) {
        const auto sys = m0_eigensystem(lambda);
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "limit eigensystem lambda=%.1f residual=%.3g", lambda,
                      sys.max_residual);
        report(sys.max_residual <= 1e-12, buf);
    }

    for (const std::uint64_t seed : {1u, 2u, 3u}) {
        const Graph g = sample_er(16, 1.5, seed);
        const auto copies = count_copies(g, Line{3}).copies;
        const auto paths = count_k_paths(g, 3);
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "path relation seed=%llu copies=%llu ordered=%llu",
                      static_cast<unsigned long long>(seed),
                      static_cast<unsigned long long>(copies),
                      static_cast<unsigned long long>(paths));
        report(paths == 2 * copies, buf);
    }

    std::printf("verify: %s\n", failures == 0 ? "all checks passed"
                                              : "TOLERANCE FAILURES");
    return failures == 0 ? 0 : 1;
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    std::string config;
    std::string out;
    std::string svg;
    std::string metric = "fnr";
    std::optional<std::uint64_t> threads;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& ex) {
        throw usage_error(std::string("bad sweep config: ") + ex.what());
    }
}

int run_sweep(const SweepArgs& a) {
    const json cfg = load_config(a.config);
    TrialConfig base;
    std::vector<double> lambdas;
    std::vector<std::uint64_t> sizes;
    try {
        base.n = cfg.at("n").get<std::uint64_t>();
        lambdas = cfg.at("lambda").get<std::vector<double>>();
        sizes = cfg.at("size").get<std::vector<std::uint64_t>>();
        base.trials = cfg.at("trials").get<std::uint64_t>();
        base.master_seed = cfg.at("master_seed").get<std::uint64_t>();
        base.dary_D = cfg.value("dary_D", 2u);
        base.reconstruct = cfg.value("reconstruct", false);
        base.threads = cfg.value("threads", std::uint64_t{0});

        const std::string detector = cfg.at("detector").get<std::string>();
        if (detector == "components") base.detector = TestKind::components;
        else if (detector == "kpath") base.detector = TestKind::kpath;
        else if (detector == "star") base.detector = TestKind::star;
        else if (detector == "dary") base.detector = TestKind::dary;
        else throw usage_error("unknown detector: " + detector);

        if (cfg.contains("variant") && !cfg.at("variant").is_null()) {
            const std::string variant = cfg.at("variant").get<std::string>();
            if (variant == "line") base.spec = Line{2};
            else if (variant == "star") base.spec = Star{1};
            else if (variant == "dary") base.spec = DaryTree{base.dary_D, 1};
            else throw usage_error("unknown variant: " + variant);
        }
    } catch (const json::exception& ex) {
        throw usage_error(std::string("bad sweep config: ") + ex.what());
    }
    if (a.threads) base.threads = *a.threads;

    const SweepTable table = sweep(lambdas, sizes, base);
    emit_csv(table, a.out);
    std::cerr << "wrote " << table.cells.size() << " cells to " << a.out
              << "\n";
    if (!a.svg.empty()) {
        emit_svg_heatmap(table, a.metric, a.svg);
        std::cerr << "wrote heatmap to " << a.svg << "\n";
    }
    print_json(json(table), false);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"planted subgraph toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "sample a graph, optionally "
                                              "with a planted structure");
    gen_cmd->add_option("--n", gen.n, "vertex count")->required();
    gen_cmd->add_option("--lambda", gen.lambda, "mean degree of the noise")
        ->required();
    gen_cmd->add_option("--plant", gen.plant_spec,
                        "line:K | star:K | dary:D,h");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed (default 0)");
    gen_cmd->add_option("--out", gen.out, "output edge-list path")->required();

    DetectArgs det;
    auto* det_cmd = app.add_subcommand("detect", "run a detection statistic");
    // This subcommand takes --h, so help must not claim the short -h.
    det_cmd->set_help_flag("--help", "print help");
    det_cmd->add_option("--in", det.in, "edge-list path")->required();
    det_cmd->add_option("--test", det.test,
                        "components | kpath | star | dary | auto");
    det_cmd->add_option("--K", det.K, "structure size");
    det_cmd->add_option("--D", det.D, "tree arity");
    det_cmd->add_option("--h", det.h, "tree height");
    det_cmd->add_option("--budget", det.budget, "path search work budget");
    det_cmd->add_option("--expect", det.expect, "H0 | H1; exit 1 on mismatch")
        ->check(CLI::IsMember({"H0", "H1"}));
    det_cmd->add_flag("--json", det.pretty, "pretty-print the JSON result");
    det_cmd->add_flag("--strict", det.strict,
                      "exit 3 if the statistic hit its budget");

    ReconstructArgs rec;
    auto* rec_cmd =
        app.add_subcommand("reconstruct", "estimate the planted vertex set");
    rec_cmd->add_option("--in", rec.in, "edge-list path")->required();
    rec_cmd->add_option("--method", rec.method, "line | star")->required();
    rec_cmd->add_option("--K", rec.K, "structure size")->required();
    rec_cmd->add_option("--seed", rec.seed, "sampling seed (star method)");
    rec_cmd->add_option("--budget", rec.budget, "path search work budget");
    rec_cmd->add_flag("--json", rec.pretty, "pretty-print the JSON result");

    TheoryArgs th;
    auto* th_cmd = app.add_subcommand("theory", "closed-form quantities");
    th_cmd->require_subcommand(1);
    const auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", th.as_json, "print JSON at full precision");
    };
    auto* th_psi = th_cmd->add_subcommand("psi", "upper tail P(Poi(mu) >= D)");
    th_psi->add_option("--mu", th.mu)->required();
    th_psi->add_option("--D", th.D)->required();
    add_common(th_psi);
    auto* th_gw = th_cmd->add_subcommand("gw", "height survival sequence");
    th_gw->set_help_flag("--help", "print help");
    th_gw->add_option("--D", th.D)->required();
    th_gw->add_option("--lambda", th.lambda)->required();
    th_gw->add_option("--h", th.h)->required();
    add_common(th_gw);
    auto* th_ps = th_cmd->add_subcommand("p_star", "survival fixed point");
    th_ps->add_option("--D", th.D)->required();
    th_ps->add_option("--lambda", th.lambda)->required();
    add_common(th_ps);
    auto* th_ld = th_cmd->add_subcommand("lambda_d", "critical intensity");
    th_ld->add_option("--D", th.D)->required();
    add_common(th_ld);
    auto* th_dt =
        th_cmd->add_subcommand("dary_thresholds", "detectability window");
    th_dt->add_option("--D", th.D)->required();
    th_dt->add_option("--lambda", th.lambda)->required();
    th_dt->add_option("--n", th.n)->required();
    add_common(th_dt);
    auto* th_lt = th_cmd->add_subcommand("line_threshold",
                                         "path length detectability");
    th_lt->add_option("--lambda", th.lambda)->required();
    th_lt->add_option("--n", th.n)->required();
    add_common(th_lt);
    auto* th_st =
        th_cmd->add_subcommand("star_threshold", "max degree scale");
    th_st->add_option("--n", th.n)->required();
    add_common(th_st);
    auto* th_mb =
        th_cmd->add_subcommand("markov_bound", "second moment upper bound");
    th_mb->add_option("--n", th.n)->required();
    th_mb->add_option("--K", th.K)->required();
    th_mb->add_option("--lambda", th.lambda)->required();
    add_common(th_mb);
    auto* th_m0 = th_cmd->add_subcommand("m0", "limit chain eigensystem");
    th_m0->add_option("--lambda", th.lambda)->required();
    add_common(th_m0);

    std::string suite = "tiny";
    auto* ver_cmd =
        app.add_subcommand("verify", "run the exact-oracle tolerance suite");
    ver_cmd->add_option("--suite", suite, "tiny (default)");

    SweepArgs sw;
    auto* sw_cmd = app.add_subcommand("sweep", "Monte Carlo phase-diagram "
                                               "grid");
    sw_cmd->add_option("--config", sw.config, "JSON grid config")->required();
    sw_cmd->add_option("--out", sw.out, "CSV output path")->required();
    sw_cmd->add_option("--svg", sw.svg, "heatmap output path");
    sw_cmd->add_option("--metric", sw.metric,
                       "fpr | fnr | mean_overlap_fraction");
    sw_cmd->add_option("--threads", sw.threads, "worker threads (0 = all)");

    try {
        app.parse(argc, argv);

        if (gen_cmd->parsed()) return run_gen(gen);
        if (det_cmd->parsed()) return run_detect(det);
        if (rec_cmd->parsed()) return run_reconstruct(rec);
        if (ver_cmd->parsed()) return run_verify(suite);
        if (sw_cmd->parsed()) return run_sweep(sw);

        if (th_psi->parsed()) print_scalar(psi_d(th.mu, th.D), th.as_json);
        else if (th_gw->parsed())
            print_json(json(gw_sequence(th.D, th.lambda, th.h)), th.as_json);
        else if (th_ps->parsed())
            print_scalar(p_star(th.D, th.lambda), th.as_json);
        else if (th_ld->parsed()) print_scalar(lambda_d(th.D), th.as_json);
        else if (th_dt->parsed())
            print_json(json(dary_thresholds(th.D, th.lambda, th.n)),
                       th.as_json);
        else if (th_lt->parsed())
            print_scalar(line_threshold(th.lambda, th.n), th.as_json);
        else if (th_st->parsed())
            print_scalar(star_threshold(th.n), th.as_json);
        else if (th_mb->parsed()) {
            if (th.K > 0xFFFFFFFFull) throw usage_error("K too large");
            print_json(json(markov_bound_e0l2(
                           th.n, static_cast<std::uint32_t>(th.K), th.lambda)),
                       th.as_json);
        } else if (th_m0->parsed())
            print_json(json(m0_eigensystem(th.lambda)), th.as_json);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const regime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
