#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "planted/graph.hpp"

namespace planted {

struct ReconstructionResult {
    std::vector<Vertex> estimated; // sorted ascending, exactly the target size
    std::optional<std::uint64_t> overlap; // filled by callers that know truth
    std::string method;
    std::map<std::string, double> diagnostics;
};

// |a ∩ b| for arbitrary vertex sets (neither needs to be sorted).
std::uint64_t overlap(const std::vector<Vertex>& a,
                      const std::vector<Vertex>& b);

// Repeatedly delete all vertices of degree <= 1 in the induced subgraph
// (simultaneously, one round at a time). Returns the survivors ascending.
std::vector<Vertex> peel(const std::vector<Vertex>& vertices, const Graph& g,
                         std::uint64_t rounds);

// Line estimate: longest-path witness, pruned by ceil(sqrt(K)) peel rounds,
// then trimmed/padded to exactly K vertices.
ReconstructionResult reconstruct_line(const Graph& g, std::uint64_t K,
                                      std::uint64_t budget = 1'000'000);

// Star estimate: the maximum-degree vertex plus K uniformly chosen neighbors
// (all of them, plus lowest-index fill, when the degree falls short).
ReconstructionResult reconstruct_star(const Graph& g, std::uint64_t K,
                                      std::uint64_t seed);

} // namespace planted
