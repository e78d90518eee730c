#pragma once

#include <cstdint>
#include <vector>

#include "planted/graph.hpp"
#include "planted/plant.hpp"

namespace planted {

// Exact brute-force computations on tiny instances. Every operation carries
// a work budget in elementary steps and throws budget_error rather than
// degrade; these are the ground truth the scalable modules are tested against.

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct CopyCount {
    std::uint64_t embeddings = 0; // injective structure-preserving maps
    std::uint64_t copies = 0;     // embeddings / aut_size
    std::uint64_t aut_size = 0;
};

// |Aut(spec)| as a graph: Line -> 2, Star{K} -> K!, DaryTree{D>=2,h} ->
// (D!)^#internal. The D=1 tree of height h >= 1 is a path, so its graph
// automorphism count is 2 (and 1 at h=0), keeping copies equal to the
// number of distinct subgraph copies for every variant.
std::uint64_t aut_size(const PlantSpec& spec);

CopyCount count_copies(const Graph& g, const PlantSpec& spec,
                       std::uint64_t budget = kDefaultOracleBudget);

// Ordered sequences of K distinct vertices with consecutive pairs adjacent;
// equals 2 * count_copies(g, Line{K}).copies for K >= 2.
std::uint64_t count_k_paths(const Graph& g, std::uint32_t K,
                            std::uint64_t budget = kDefaultOracleBudget);

// L(G) = X / E0(X) with E0(X) = m (lambda/n)^{e}, m = (n)_{K'} / |Aut|.
double exact_likelihood_ratio(const Graph& g, const PlantSpec& spec, double lambda,
                              std::uint64_t budget = kDefaultOracleBudget);

struct IdentityReport {
    double max_abs_error = 0; // max over graphs of |P1(g) - L(g) P0(g)|
    double sum_p1 = 0;        // should be 1
    double e0_l = 0;          // sum over graphs of L(g) P0(g); should be 1
};

// Enumerates all 2^C(n,2) graphs, computes P1 by averaging over all
// placements of spec, and checks the Bayes identity P1 = L * P0. n <= 6.
IdentityReport exact_identity_check(Vertex n, const PlantSpec& spec, double lambda);

// E0(L^2) for lines: the exact average of (n/lambda)^S over every ordered
// K-tuple of distinct vertices, S = undirected edges shared with the path
// 0-1-...-(K-1).
double exact_e0_l2_line(Vertex n, std::uint32_t K, double lambda,
                        std::uint64_t budget = kDefaultOracleBudget);

struct MapPosterior {
    std::vector<std::uint64_t> scores; // per vertex: ordered K-paths through it
    std::vector<Vertex> top;           // K best, ties to the lowest index
};

MapPosterior map_posterior_line(const Graph& g, std::uint32_t K,
                                std::uint64_t budget = kDefaultOracleBudget);

} // namespace planted
