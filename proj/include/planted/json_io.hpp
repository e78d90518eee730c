#pragma once

#include <json.hpp>

#include "planted/detect.hpp"
#include "planted/experiments.hpp"
#include "planted/oracle.hpp"
#include "planted/reconstruct.hpp"
#include "planted/theory.hpp"

namespace planted {

inline void to_json(nlohmann::json& j, const DetectionResult& r) {
    j = {{"test", to_string(r.test)},
         {"decision", to_string(r.decision)},
         {"exact", r.exact},
         {"stats", r.stats}};
}

inline void to_json(nlohmann::json& j, const ReconstructionResult& r) {
    j = {{"estimated", r.estimated},
         {"overlap", nullptr},
         {"method", r.method},
         {"diagnostics", r.diagnostics}};
    if (r.overlap) j["overlap"] = *r.overlap;
}

inline void to_json(nlohmann::json& j, const CellStats& c) {
    j = {{"lambda", c.lambda}, {"size", c.size},
         {"trials", c.trials}, {"fpr", c.fpr},
         {"fnr", nullptr},     {"mean_overlap_fraction", nullptr}};
    if (c.fnr) j["fnr"] = *c.fnr;
    if (c.mean_overlap_fraction)
        j["mean_overlap_fraction"] = *c.mean_overlap_fraction;
}

inline void to_json(nlohmann::json& j, const SweepTable& t) {
    j = {{"lambda", t.lambdas}, {"size", t.sizes}, {"cells", t.cells}};
}

inline void to_json(nlohmann::json& j, const GwSequence& s) {
    j = {{"D", s.D}, {"lambda", s.lambda}, {"p", s.p}};
}

inline void to_json(nlohmann::json& j, const DaryThresholds& t) {
    j = {{"h_under", t.h_under}, {"h_bar", t.h_bar}, {"gap", t.gap}};
}

inline void to_json(nlohmann::json& j, const MarkovBoundReport& r) {
    j = {{"n", r.n},           {"K", r.K},
         {"lambda", r.lambda}, {"M", r.M},
         {"F1", r.F1},         {"bound", r.bound},
         {"eigvals_M", r.eigvals_M}, {"eigvals_M0", r.eigvals_M0},
         {"m0_degenerate", r.m0_degenerate}};
}

inline void to_json(nlohmann::json& j, const M0Eigensystem& e) {
    j = {{"eigenvalues", e.eigenvalues},
         {"left_eigenvectors", e.left_eigenvectors},
         {"max_residual", e.max_residual}};
}

inline void to_json(nlohmann::json& j, const IdentityReport& r) {
    j = {{"max_abs_error", r.max_abs_error},
         {"sum_p1", r.sum_p1},
         {"e0_l", r.e0_l}};
}

inline void to_json(nlohmann::json& j, const CopyCount& c) {
    j = {{"embeddings", c.embeddings},
         {"copies", c.copies},
         {"aut_size", c.aut_size}};
}

inline void to_json(nlohmann::json& j, const MapPosterior& m) {
    j = {{"scores", m.scores}, {"top", m.top}};
}

} // namespace planted
