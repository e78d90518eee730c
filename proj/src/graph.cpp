#include "planted/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "planted/errors.hpp"
#include "planted/rng.hpp"

namespace planted {

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n) {
    for (auto& [u, v] : edges) {
        if (u == v)
            throw usage_error("self-loop at vertex " + std::to_string(u));
        if (u >= n || v >= n)
            throw usage_error("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Filling from the lexicographically sorted edge list leaves every
    // neighbor list sorted: for a fixed vertex x, edges (u,x) arrive with u
    // ascending and precede all edges (x,w), which arrive with w ascending.
    for (const auto& [u, v] : edges_) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_ || u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

// Lexicographic linear index over pairs (u,v), u < v:
// pairs with first coordinate < u come first. T(u) = u*(n-1) - u*(u-1)/2.
std::uint64_t pairs_before(std::uint64_t u, std::uint64_t n) {
    return u * (n - 1) - u * (u - 1) / 2;
}

Edge pair_from_index(std::uint64_t idx, std::uint64_t n) {
    // Invert T(u) <= idx < T(u+1) via the quadratic formula, then fix up
    // floating-point slack.
    const double b = 2.0 * static_cast<double>(n) - 1.0;
    const double disc = b * b - 8.0 * static_cast<double>(idx);
    auto u = static_cast<std::uint64_t>((b - std::sqrt(std::max(disc, 0.0))) / 2.0);
    while (u > 0 && pairs_before(u, n) > idx) --u;
    while (pairs_before(u + 1, n) <= idx) ++u;
    const std::uint64_t v = idx - pairs_before(u, n) + u + 1;
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

} // namespace

Graph sample_er(Vertex n, double lambda, std::uint64_t seed) {
    if (lambda < 0) throw usage_error("lambda must be nonnegative");
    if (lambda > static_cast<double>(n))
        throw usage_error("edge probability lambda/n exceeds 1");
    if (n < 2 || lambda == 0) return Graph(n, {});

    const double p = lambda / static_cast<double>(n);
    const std::uint64_t total =
        static_cast<std::uint64_t>(n) * (n - 1) / 2;

    std::vector<Edge> edges;
    if (p >= 1.0) {
        edges.reserve(total);
        for (Vertex u = 0; u + 1 < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return Graph(n, std::move(edges));
    }

    edges.reserve(static_cast<std::size_t>(lambda * n / 2 * 1.1) + 16);
    Rng rng(seed);
    const double log_q = std::log1p(-p);
    // Geometric skip: gap ~ Geom(p), P(gap = k) = p(1-p)^k, so each pair is
    // included independently with probability p.
    std::uint64_t idx = 0;
    while (idx < total) {
        const double u = rng.u01();
        const double gap = std::floor(std::log1p(-u) / log_q);
        if (gap >= static_cast<double>(total - idx)) break;
        idx += static_cast<std::uint64_t>(gap);
        edges.push_back(pair_from_index(idx, n));
        ++idx;
    }
    return Graph(n, std::move(edges));
}

} // namespace planted
