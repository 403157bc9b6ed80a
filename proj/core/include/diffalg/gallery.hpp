#pragma once

#include "diffalg/doc.hpp"

namespace diffalg {

struct GalleryScenario {
    std::string id;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string details;
};

struct GalleryResult {
    std::vector<GalleryScenario> scenarios;
    bool all_pass = true;
    Json report;  // consolidated, deterministic (timings are excluded)
};

/// Run the full verification gallery (or the scenario whose id matches
/// `only`). Every threshold is pinned in code; scenarios are exact.
GalleryResult run_gallery(const std::string& only = "");

}  // namespace diffalg
