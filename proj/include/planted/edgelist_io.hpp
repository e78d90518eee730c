#pragma once

#include <string>

#include "planted/plant.hpp"

namespace planted {

// Edge-list file: line 1 "n m", then m lines "u v" with 0 <= u < v < n.
// A ground-truth sidecar is always written at path + ".truth.json"
// (spec/vertices/edges are null when nothing was planted) so that seed and
// lambda survive the round trip; load_edgelist reads it back when present.
void save_edgelist(const Instance& inst, const std::string& path);
Instance load_edgelist(const std::string& path);

} // namespace planted
