#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace planted {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>; // canonical form u < v

// Immutable sparse undirected simple graph on vertices 0..n-1.
// Stored as a canonical sorted edge list plus a CSR adjacency structure
// with per-vertex sorted neighbor lists.
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    // Edges may arrive in any order/orientation; they are canonicalized and
    // deduplicated. Self-loops and out-of-range endpoints throw.
    Graph(Vertex n, std::vector<Edge> edges);

    Vertex vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(Vertex u, Vertex v) const;

    // Canonical: each pair u < v, pairs in lexicographic order, unique.
    const std::vector<Edge>& edges() const { return edges_; }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adj_;
};

// G(n, lambda/n): every pair independent with probability lambda/n.
// Deterministic in (n, lambda, seed); pairs are visited in lexicographic
// order via geometric skips, so expected cost is O(n*lambda), not O(n^2).
Graph sample_er(Vertex n, double lambda, std::uint64_t seed);

} // namespace planted
