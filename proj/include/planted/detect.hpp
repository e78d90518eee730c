#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "planted/graph.hpp"

namespace planted {

enum class TestKind { components, kpath, star, dary };
enum class Decision { H0, H1 };

std::string to_string(TestKind t);
std::string to_string(Decision d);

struct DetectionResult {
    TestKind test = TestKind::components;
    Decision decision = Decision::H0;
    bool exact = true; // false when a statistic is only a budget-limited bound
    std::map<std::string, double> stats;
};

// Component-count test: A1 = isolated vertices, A2 = isolated edges,
// A3 = connected 3-vertex components; lambda_hat = n A3 / (A1 A2) (falls back
// to 2|E|/n when A1 A2 = 0, flagged "fallback"); k_hat = n - e^lambda_hat A1;
// H1 iff k_hat >= sqrt(K sqrt(n)).
DetectionResult component_count_test(const Graph& g, std::uint64_t K);

struct LongestPathResult {
    std::uint64_t length = 0; // in vertices
    std::vector<Vertex> witness;
    bool exact = true;
};

// Exact per acyclic component (tree diameter via two BFS sweeps); exhaustive
// budgeted DFS over simple paths per cyclic component. If target > 0 the
// search stops as soon as a path of target vertices is found (the result is
// then a certified lower bound and exact stays true). exact turns false only
// when some cyclic component exhausted its budget and target was not reached.
LongestPathResult longest_path(const Graph& g, std::uint64_t budget = 1'000'000,
                               std::uint64_t target = 0);

// H1 iff the graph contains a path of K vertices.
DetectionResult k_path_test(const Graph& g, std::uint64_t K,
                            std::uint64_t budget = 1'000'000);

// H1 iff some vertex has degree >= K; argmax ties to the lowest index.
DetectionResult star_test(const Graph& g, std::uint64_t K);

struct DaryHeights {
    std::vector<std::uint32_t> height; // max certified D-ary root height per vertex
    // True iff every h_max-ball is acyclic (verified). A claim of height h
    // depends only on the h-ball of its vertex, so with exact=true every
    // reported value up to h_max is witnessed by an injective embedding;
    // h_max+1 (the one value an iteration can exceed its radius by) certifies
    // its first h_max levels only. dary_test always queries with h_max = h.
    bool exact = true;
};

// Non-backtracking message passing: H^{t+1}(u->v) = 1 + (D-th largest of
// {H^t(w->u) : w in N(u)\{v}}) when u has at least D such neighbors, else 0.
// Root height of v = 1 + D-th largest incoming message when deg(v) >= D,
// else 0. Exact on graphs whose h_max-neighborhoods are acyclic; otherwise an
// upper-bound heuristic, reported by the exact flag.
DaryHeights dary_height_messages(const Graph& g, std::uint32_t D,
                                 std::uint32_t h_max);

// H1 iff some vertex certifies D-ary root height >= h.
DetectionResult dary_test(const Graph& g, std::uint32_t D, std::uint32_t h);

} // namespace planted
