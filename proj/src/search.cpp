#include "rsm/search.hpp"

#include <cmath>
#include <cstdio>

#include "rsm/lp_builder.hpp"

namespace rsm {

SearchResult best_n_level(const AmbiguitySet& set, int n, double resolution, const SearchOptions& opts) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(resolution > 0.0)) throw DomainError("resolution must be positive");
    const double cells = set.vbar / resolution;
    const long M = std::lround(std::floor(cells + 1e-9));
    if (M < n) throw DomainError("resolution leaves fewer cells than levels");
    std::vector<double> grid;
    for (long k = 0; k <= M; ++k) grid.push_back(std::min(set.vbar, k * resolution));
    if (grid.back() < set.vbar - 1e-12 * set.vbar) grid.push_back(set.vbar);
    const std::size_t G = grid.size();
    const std::size_t nn = static_cast<std::size_t>(n);
    if (G < nn) throw DomainError("resolution leaves fewer grid points than levels");

    // total count C(G, n) for progress reporting
    double total = 1.0;
    for (std::size_t i = 0; i < nn; ++i) total = total * static_cast<double>(G - i) / static_cast<double>(i + 1);

    SearchResult out;
    bool have = false;
    std::vector<std::size_t> idx(nn);
    for (std::size_t i = 0; i < nn; ++i) idx[i] = i;
    std::vector<double> prices(nn);
    double next_report = 0.1;
    for (;;) {
        for (std::size_t i = 0; i < nn; ++i) prices[i] = grid[idx[i]];
        RatioResult r = solve_ratio_given_prices(set, prices);
        ++out.candidates;
        if (!have || r.ratio > out.best.ratio + 1e-12) {
            have = true;
            out.best = std::move(r);
            out.tuple = prices;
        }
        if (opts.progress && static_cast<double>(out.candidates) >= next_report * total) {
            std::fprintf(stderr, "[search] n=%d %.0f%% (%zu tuples) best=%.9f\n", n, next_report * 100.0,
                         out.candidates, out.best.ratio);
            next_report += 0.1;
        }
        // next strictly increasing tuple in lexicographic order
        std::size_t i = nn;
        while (i > 0 && idx[i - 1] == G - nn + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < nn; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

RatioResult approx_inf_level(const AmbiguitySet& set, std::size_t gridsize) {
    if (gridsize < 50) throw DomainError("gridsize must be at least 50");
    std::vector<double> prices;
    for (std::size_t k = 1; k <= gridsize; ++k)
        prices.push_back(set.vbar * static_cast<double>(k) / static_cast<double>(gridsize));
    for (double b : set.breakpoints()) prices.push_back(b);
    return solve_ratio_given_prices(set, prices);
}

}  // namespace rsm
