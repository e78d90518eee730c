#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "planted/graph.hpp"

namespace planted {

// The planted structure: a path on K vertices, a star with K leaves, or a
// complete D-ary tree of height h.
struct Line {
    std::uint32_t K; // vertex count, ≥ 2
    bool operator==(const Line&) const = default;
};
struct Star {
    std::uint32_t K; // leaf count, ≥ 1; the structure has K+1 vertices
    bool operator==(const Star&) const = default;
};
struct DaryTree {
    std::uint32_t D; // arity ≥ 1
    std::uint32_t h; // height ≥ 0
    bool operator==(const DaryTree&) const = default;
};
using PlantSpec = std::variant<Line, Star, DaryTree>;

std::uint64_t spec_vertex_count(const PlantSpec& spec);
std::uint64_t spec_edge_count(const PlantSpec& spec);
std::string spec_variant(const PlantSpec& spec); // "line" | "star" | "dary"

// Edges on local labels 0..vertex_count()-1. Line: 0-1-2-...; Star: center 0;
// DaryTree: breadth-first labels, children of internal node i are D*i+1..D*i+D.
std::vector<Edge> spec_edges(const PlantSpec& spec);

// Parses "line:K", "star:K", "dary:D,h".
PlantSpec parse_plant_spec(const std::string& text);

struct GroundTruth {
    PlantSpec spec;
    std::vector<Vertex> planted_vertices; // sigma in structure-label order
    std::vector<Edge> planted_edges;      // canonical u < v, structure edge order
    bool operator==(const GroundTruth&) const = default;
};

struct Instance {
    Graph graph;
    std::optional<GroundTruth> truth;
    std::uint64_t seed = 0;
    double lambda = 0;
    bool operator==(const Instance&) const = default;
};

// Plants spec into base at a uniformly random injective vertex map and
// returns the union graph plus ground truth. Edges already present in base
// are deduplicated silently. lambda is provenance carried into the Instance.
Instance plant(const Graph& base, const PlantSpec& spec, std::uint64_t seed,
               double lambda = 0);

} // namespace planted
