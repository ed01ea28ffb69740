#pragma once

#include <utility>
#include <vector>

#include "rsm/ambiguity.hpp"
#include "rsm/core.hpp"
#include "rsm/lp_solver.hpp"

namespace rsm {

// Column and row maps of the competitive-ratio LP.  Atom sites are the left limits of the merged
// grid points (0 itself enters as an Exact site); hindsight prices are the sites with value > 0.
struct RatioLpLayout {
    std::vector<GridPoint> sites;
    std::vector<std::size_t> hindsight;  // indices into sites
    std::vector<double> prices;          // sorted unique levels
    std::size_t K = 0;
    bool point_mass = false;             // set closes to the point mass at vbar

    std::size_t lambda_col(std::size_t k, std::size_t i) const { return i * K + k; }
    std::size_t x_col(std::size_t l) const { return K * hindsight.size() + l; }
    std::size_t r_col() const { return K * hindsight.size() + prices.size(); }
    std::size_t num_cols() const { return r_col() + 1; }
    std::size_t row(std::size_t i, std::size_t j) const { return i * sites.size() + j; }
    std::size_t num_rows() const { return hindsight.size() * sites.size() + 1; }
};

RatioLpLayout ratio_lp_layout(const AmbiguitySet& set, const std::vector<double>& prices);

// Coefficients of the (i, j) payment row: r p_i [site_j >= p_i] + sum_k phi_k(site_j) lambda_ki - t(site_j) <= 0
std::vector<double> ratio_lp_row(const AmbiguitySet& set, const RatioLpLayout& layout, std::size_t i, std::size_t j);

std::pair<LinearProgram, RatioLpLayout> build_ratio_lp(const AmbiguitySet& set, const std::vector<double>& prices);

struct RatioSolveOptions {
    // full LP up to this many rows, lazy row generation above it
    std::size_t dense_row_limit = 600;
    double row_tol = 1e-10;
};

struct RatioLpStats {
    std::size_t rows_used = 0;
    std::size_t rounds = 0;
    long pivots = 0;
};

RatioResult solve_ratio_given_prices(const AmbiguitySet& set, const std::vector<double>& prices,
                                     const RatioSolveOptions& opts = {}, RatioLpStats* stats = nullptr);

// Columns: Delta, lambda_1..lambda_{n+1} (free), x_1..x_n.
LinearProgram build_alpha_metric_lp(double mu, double vbar, const std::vector<double>& prices, double alpha);
std::pair<double, Mechanism> solve_alpha_metric_given_prices(double mu, double vbar, const std::vector<double>& prices,
                                                             double alpha);

// Columns: lambda_0 (free), lambda_1 >= 0, x_1..x_n.
LinearProgram build_maximin_revenue_lp(double mu, double vbar, const std::vector<double>& prices);
std::pair<double, Mechanism> solve_maximin_revenue_given_prices(double mu, double vbar,
                                                                const std::vector<double>& prices);

}  // namespace rsm
