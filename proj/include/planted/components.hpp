#pragma once

#include <cstddef>
#include <vector>

#include "planted/graph.hpp"

namespace planted {

struct Component {
    std::vector<Vertex> vertices; // ascending
    std::size_t edge_count = 0;
    bool acyclic = false; // edge_count == vertices.size() - 1
};

// Components ordered by smallest contained vertex.
std::vector<Component> connected_components(const Graph& g);

// Size and edge count per component without materializing vertex lists;
// cheap enough for n = 10^6. summary[i] = {size, edges} of the component
// with the i-th smallest root.
struct ComponentSummary {
    std::vector<std::uint64_t> size;
    std::vector<std::uint64_t> edges;
};
ComponentSummary component_summary(const Graph& g);

} // namespace planted
