#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "planted/detect.hpp"
#include "planted/errors.hpp"
#include "planted/graph.hpp"
#include "planted/oracle.hpp"
#include "planted/plant.hpp"
#include "planted/rng.hpp"

using namespace planted;

namespace {

Graph path_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, edges);
}

Graph cycle_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    edges.push_back({0, n - 1});
    return Graph(n, edges);
}

Graph star_graph(Vertex leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return Graph(leaves + 1, edges);
}

Graph random_tree(Vertex n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) edges.push_back({rng.below(v), v});
    return Graph(n, edges);
}

// Exhaustive simple-path search, feasible only on tiny graphs.
std::uint64_t brute_longest_path(const Graph& g) {
    const Vertex n = g.vertex_count();
    if (n == 0) return 0;
    std::vector<bool> used(n, false);
    std::uint64_t best = 1;
    std::function<void(Vertex, std::uint64_t)> dfs =
        [&](Vertex v, std::uint64_t len) {
            best = std::max(best, len);
            for (const Vertex w : g.neighbors(v)) {
                if (used[w]) continue;
                used[w] = true;
                dfs(w, len + 1);
                used[w] = false;
            }
        };
    for (Vertex s = 0; s < n; ++s) {
        used[s] = true;
        dfs(s, 1);
        used[s] = false;
    }
    return best;
}

void check_witness(const Graph& g, const LongestPathResult& lp) {
    REQUIRE(lp.witness.size() == lp.length);
    const std::set<Vertex> distinct(lp.witness.begin(), lp.witness.end());
    CHECK(distinct.size() == lp.witness.size());
    for (std::size_t i = 0; i + 1 < lp.witness.size(); ++i)
        CHECK(g.has_edge(lp.witness[i], lp.witness[i + 1]));
}

} // namespace

TEST_CASE("component count test on pinned examples") {
    const auto isolated = component_count_test(Graph(5, {}), 3);
    CHECK(isolated.decision == Decision::H0);
    CHECK(isolated.stats.at("fallback") == 1);
    CHECK(isolated.stats.at("lambda_hat") == 0.0);
    CHECK(isolated.stats.at("k_hat") == 0.0);

    const auto one_edge = component_count_test(Graph(100, {{0, 1}}), 10);
    CHECK(one_edge.decision == Decision::H0);
    CHECK(one_edge.stats.at("A1") == 98);
    CHECK(one_edge.stats.at("A2") == 1);
    CHECK(one_edge.stats.at("A3") == 0);
    CHECK(one_edge.stats.at("lambda_hat") == 0.0);
    CHECK(one_edge.stats.at("k_hat") == doctest::Approx(2.0));
    CHECK(one_edge.stats.at("t_n") == doctest::Approx(10.0));
    CHECK(one_edge.stats.count("fallback") == 0);
    CHECK(one_edge.test == TestKind::components);
}

TEST_CASE("component count test fires when small components vanish") {
    // A hundred-vertex path has no component of size <= 3, so the estimator
    // falls back to the degree-based intensity and k_hat equals n.
    const auto res = component_count_test(path_graph(100), 10);
    CHECK(res.stats.at("fallback") == 1);
    CHECK(res.stats.at("k_hat") == doctest::Approx(100.0));
    CHECK(res.decision == Decision::H1);
}

TEST_CASE("component count test input contract") {
    CHECK_THROWS_AS(component_count_test(Graph(0, {}), 3), usage_error);
    CHECK_THROWS_AS(component_count_test(Graph(5, {}), 0), usage_error);
}

TEST_CASE("component counts are consistent on random graphs") {
    for (const std::uint64_t seed : {11u, 12u, 13u}) {
        const Graph g = sample_er(400, 1.2, seed);
        const auto res = component_count_test(g, 20);
        const double a1 = res.stats.at("A1");
        const double a2 = res.stats.at("A2");
        const double a3 = res.stats.at("A3");
        CHECK(a1 + 2 * a2 + 3 * a3 <= 400.0);
        CHECK(res.stats.at("t_n") > 0.0);
        // A1 is exactly the number of degree-zero vertices.
        double isolated = 0;
        for (Vertex v = 0; v < 400; ++v)
            if (g.degree(v) == 0) ++isolated;
        CHECK(a1 == isolated);
    }
}

TEST_CASE("longest path on pinned shapes") {
    const auto path = longest_path(path_graph(7));
    CHECK(path.length == 7);
    CHECK(path.exact);
    check_witness(path_graph(7), path);

    const auto cycle = longest_path(cycle_graph(5));
    CHECK(cycle.length == 5);
    CHECK(cycle.exact);
    check_witness(cycle_graph(5), cycle);

    const auto star = longest_path(star_graph(4));
    CHECK(star.length == 3);
    CHECK(star.exact);

    const auto empty = longest_path(Graph(0, {}));
    CHECK(empty.length == 0);
    CHECK(empty.witness.empty());
}

TEST_CASE("longest path matches exhaustive search on small trees") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = random_tree(12, seed);
        const auto lp = longest_path(g);
        CHECK(lp.exact);
        CHECK(lp.length == brute_longest_path(g));
        check_witness(g, lp);
    }
}

TEST_CASE("longest path matches exhaustive search on small sparse graphs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Graph g = sample_er(9, 1.6, 1000 + seed);
        const auto lp = longest_path(g);
        check_witness(g, lp);
        if (lp.exact) CHECK(lp.length == brute_longest_path(g));
    }
}

TEST_CASE("longest path under a tight budget stays a valid lower bound") {
    const Graph g = sample_er(40, 6.0, 7);
    const auto lp = longest_path(g, 25);
    CHECK(!lp.exact);
    CHECK(lp.length >= 2);
    check_witness(g, lp);
}

TEST_CASE("longest path stops early once the target is met") {
    const auto lp = longest_path(cycle_graph(9), 1'000'000, 4);
    CHECK(lp.exact);
    CHECK(lp.length >= 4);
    check_witness(cycle_graph(9), lp);
}

TEST_CASE("k path test") {
    const auto hit = k_path_test(path_graph(5), 5);
    CHECK(hit.decision == Decision::H1);
    CHECK(hit.test == TestKind::kpath);
    CHECK(hit.stats.at("longest_path_len") == 5);
    CHECK(hit.stats.at("threshold") == 5);

    const auto miss = k_path_test(Graph(3, {}), 2);
    CHECK(miss.decision == Decision::H0);
    CHECK(miss.stats.at("longest_path_len") == 1);

    CHECK_THROWS_AS(k_path_test(path_graph(5), 1), usage_error);
}

TEST_CASE("star test") {
    const auto hit = star_test(star_graph(5), 5);
    CHECK(hit.decision == Decision::H1);
    CHECK(hit.test == TestKind::star);
    CHECK(hit.stats.at("max_degree") == 5);
    CHECK(hit.stats.at("argmax") == 0);

    const auto miss = star_test(path_graph(10), 3);
    CHECK(miss.decision == Decision::H0);
    CHECK(miss.stats.at("max_degree") == 2);

    CHECK_THROWS_AS(star_test(star_graph(3), 0), usage_error);
}

TEST_CASE("star test is invariant under relabeling") {
    // Same star with the center moved to the highest label.
    const Graph relabeled(6, {{5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}});
    const auto a = star_test(star_graph(5), 4);
    const auto b = star_test(relabeled, 4);
    CHECK(a.decision == b.decision);
    CHECK(a.stats.at("max_degree") == b.stats.at("max_degree"));
}

TEST_CASE("dary heights on a complete binary tree") {
    const Graph g(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    const auto res = dary_height_messages(g, 2, 2);
    REQUIRE(res.height.size() == 7);
    CHECK(res.exact);
    CHECK(res.height[0] == 2);
    CHECK(res.height[1] == 1);
    CHECK(res.height[2] == 1);
    for (Vertex leaf = 3; leaf < 7; ++leaf) CHECK(res.height[leaf] == 0);
}

TEST_CASE("dary heights on a triangle are capped by the radius") {
    const Graph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    const auto res = dary_height_messages(tri, 2, 1);
    CHECK(!res.exact);
    for (Vertex v = 0; v < 3; ++v) CHECK(res.height[v] == 1);
}

TEST_CASE("dary heights grow pointwise with the radius") {
    for (const std::uint64_t seed : {3u, 4u}) {
        const Graph g = sample_er(60, 2.5, seed);
        auto prev = dary_height_messages(g, 2, 1);
        for (std::uint32_t h = 2; h <= 4; ++h) {
            const auto cur = dary_height_messages(g, 2, h);
            for (Vertex v = 0; v < 60; ++v)
                CHECK(cur.height[v] >= prev.height[v]);
            prev = cur;
        }
    }
}

TEST_CASE("certified dary heights agree with exhaustive copy counts") {
    // Radius-matched: a height-h claim is certified by the h-ball, so each h
    // gets its own message pass.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Graph g = sample_er(10, 1.8, 500 + seed);
        for (std::uint32_t h = 1; h <= 3; ++h) {
            const auto res = dary_height_messages(g, 2, h);
            if (!res.exact) continue;
            const std::uint32_t max_h =
                *std::max_element(res.height.begin(), res.height.end());
            const bool embeds =
                count_copies(g, DaryTree{2, h}, 100'000'000).copies > 0;
            CHECK((max_h >= h) == embeds);
        }
    }
}

TEST_CASE("dary test") {
    const auto inst = plant(Graph(20, {}), DaryTree{2, 3}, 42);
    const auto hit = dary_test(inst.graph, 2, 3);
    CHECK(hit.decision == Decision::H1);
    CHECK(hit.test == TestKind::dary);
    CHECK(hit.stats.at("max_dheight") >= 3);
    CHECK(hit.stats.at("D") == 2);
    CHECK(hit.stats.at("threshold") == 3);
    CHECK(hit.exact);

    const auto miss = dary_test(Graph(4, {}), 2, 1);
    CHECK(miss.decision == Decision::H0);
    CHECK(miss.stats.at("max_dheight") == 0);

    CHECK_THROWS_AS(dary_test(Graph(4, {}), 1, 1), usage_error);
    CHECK_THROWS_AS(dary_test(Graph(4, {}), 2, 0), usage_error);
}
