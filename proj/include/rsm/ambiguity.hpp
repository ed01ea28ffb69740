#pragma once

#include <string>
#include <vector>

#include "rsm/core.hpp"

namespace rsm {

// Affine pieces on the open intervals between knots, explicit values at the knots.
// Within every piece the slope is >= 0; jumps (either direction) sit on knots.
struct PiecewiseMonotoneFn {
    std::vector<double> knots;  // 0 = knots.front() < ... < knots.back() = vbar
    std::vector<double> slope;  // per piece (knots[s], knots[s+1])
    std::vector<double> intercept;
    std::vector<double> at_knot;

    std::size_t pieces() const { return slope.size(); }
    double piece_value(std::size_t s, double v) const { return slope[s] * v + intercept[s]; }
    double eval(GridPoint at) const;
    double left_limit(double v) const { return eval({v, Side::LeftLimit}); }
};

enum class SetKind { Support, Mean, Quantile, MultiSegment, SegmentedMean };

const char* set_kind_name(SetKind k);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SetParams {
    double vlo = 0.0;                  // support
    double mu = 0.0;                   // mean
    std::vector<double> omega, xi;     // quantile
    std::vector<Interval> intervals;   // multisegment / segmentedmean
    std::vector<double> levels;        // xi_k (multisegment) or mu_k (segmentedmean)
};

struct AmbiguitySet {
    double vbar = 1.0;
    SetKind kind = SetKind::Support;
    SetParams params;
    std::vector<PiecewiseMonotoneFn> phi;

    std::size_t K() const { return phi.size(); }
    std::vector<double> breakpoints() const;  // interior knots, sorted, unique
};

AmbiguitySet make_support(double vlo, double vbar);
AmbiguitySet make_mean(double mu, double vbar);
AmbiguitySet make_quantile(std::vector<double> omega, std::vector<double> xi, double vbar);
AmbiguitySet make_multisegment(std::vector<Interval> intervals, std::vector<double> xi, double vbar);
AmbiguitySet make_segmentedmean(std::vector<Interval> intervals, std::vector<double> mu, double vbar);
AmbiguitySet make_standard_set(SetKind kind, const SetParams& p, double vbar);

double phi_eval(const AmbiguitySet& set, std::size_t k, GridPoint at);

// True when every phi_k < 0 on [0, vbar) and some phi_k(vbar) >= 0 closes the set
// to the point mass at vbar (e.g. mean = vbar, support lower bound = vbar).
bool forces_point_mass_at_vbar(const AmbiguitySet& set);

// Some phi_k is strictly larger at vbar than just below it.
bool jumps_up_at_vbar(const AmbiguitySet& set);

struct MergedGrid {
    std::vector<double> u;                     // sorted unique prices, breakpoints, vbar
    std::vector<double> prices;                // sorted unique prices
    std::vector<std::size_t> below;            // |S_j| = #{l : v_l < u_j}; S_j is a prefix
    std::vector<std::vector<double>> phi_ll;   // [k][j] left limits at u_j (value at 0 if u_j = 0)

    std::size_t size() const { return u.size(); }
    std::vector<std::size_t> members(std::size_t j) const;
};

MergedGrid merged_grid(const AmbiguitySet& set, const std::vector<double>& prices);

}  // namespace rsm
