#pragma once

#include "rsm/ambiguity.hpp"
#include "rsm/core.hpp"

namespace rsm {

struct SearchOptions {
    bool progress = false;  // telemetry lines on stderr
};

struct SearchResult {
    RatioResult best;
    std::vector<double> tuple;  // winning grid tuple
    std::size_t candidates = 0;
};

// Exhaustive search over strictly increasing n-tuples of {0, d, 2d, ..., vbar}.
SearchResult best_n_level(const AmbiguitySet& set, int n, double resolution, const SearchOptions& opts = {});

// One LP over the uniform grid {vbar/G, ..., vbar} plus the set's breakpoints: a lower bound on the
// infinite-level ratio.
RatioResult approx_inf_level(const AmbiguitySet& set, std::size_t gridsize);

}  // namespace rsm
