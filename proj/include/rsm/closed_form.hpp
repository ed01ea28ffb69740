#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rsm/core.hpp"

namespace rsm {

struct RootSpec {
    double lo = 0.0;
    double hi = 1.0;
    double rel_tol = 1e-13;
    int max_iter = 200;
};

// Bisection; residual must change sign over [lo, hi].
double bisect(const std::function<double(double)>& f, const RootSpec& spec);

RatioResult support_levels_ratio(double vlo, double vhi, std::vector<double> prices);
RatioResult support_optimal(int n, double vlo, double vhi);
double support_limit_ratio(double vlo, double vhi);

RatioResult mean_one_level(double mu, double vbar);

struct MeanTwoLevel {
    RatioResult result;
    bool low_branch = true;     // mu / vbar <= 0.49
    bool v2_at_least_mu = true;
    double crossover = 0.0;     // where the two R2 expressions meet, in units of mu / vbar
    std::string warning;        // set when mu / vbar is within 0.005 of 0.49
};

MeanTwoLevel mean_two_level_detail(double mu, double vbar);
RatioResult mean_two_level(double mu, double vbar);

struct MeanVarTwoLevel {
    Mechanism mechanism;  // vbar is set to the top price; the support is unbounded
    double ratio = 0.0;
};

MeanVarTwoLevel meanvar_two_level_approx(double mu, double sigma);
double meanvar_ratio_lower_bound(double mu, double sigma);

RatioResult quantile_one_level(double omega, double xi, double vbar);
RatioResult quantile_two_level(double omega, double xi, double vbar);

// Continuous price density plus a point mass at omega.
struct QuantileInfMechanism {
    double omega = 0.0, xi = 0.0, vbar = 1.0;
    double r = 0.0;
    double phat = 0.0;
    double point_mass = 0.0;
    bool degenerate = false;  // xi = 1: deterministic price omega

    double density(double v) const;
    double payment(double v) const;  // t(v), right-continuous
    double payment_at(GridPoint at) const;
    double allocation(double v) const;
    double total_mass() const;  // integral of the density plus the point mass
    std::vector<double> kinks() const;  // points where t or q changes form
};

QuantileInfMechanism quantile_inf(double omega, double xi, double vbar);

struct MaximinRevenue {
    Mechanism mechanism;
    double revenue = 0.0;
    double v1 = 0.0;
};

MaximinRevenue maximin_revenue_optimal(double mu, double vbar, int n);

// n = infinity: payment (v - v1) / (ln vbar - ln v1) above v1
struct LinearPayment {
    double v1 = 0.0;
    double revenue = 0.0;
    double payment(double v, double vbar) const;
};

LinearPayment maximin_revenue_linear(double mu, double vbar);

struct RegretResult {
    double price = 0.0;
    double regret = 0.0;
};

RegretResult minimax_regret_one_level(double mu, double vbar);

}  // namespace rsm
