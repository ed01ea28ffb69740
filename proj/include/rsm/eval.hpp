#pragma once

#include <functional>
#include <utility>

#include "rsm/closed_form.hpp"
#include "rsm/core.hpp"

namespace rsm {

struct Distribution {
    enum class Kind { Beta, Discrete };
    Kind kind = Kind::Beta;
    double vbar = 1.0;
    double alpha = 1.0, beta = 1.0;  // Beta scaled to [0, vbar]
    DiscreteDistribution atoms;

    static Distribution make_beta(double alpha, double beta, double vbar);
    static Distribution make_discrete(DiscreteDistribution atoms, double vbar);
    static Distribution make_discrete(const std::vector<double>& values, const std::vector<double>& masses, double vbar);
};

double cdf(const Distribution& d, double v);       // P(V <= v)
double cdf_left(const Distribution& d, double v);  // P(V < v)
double tail(const Distribution& d, double v);      // P(V >= v)
double pdf(const Distribution& d, double v);       // Beta only
double mean_of(const Distribution& d);
double variance_of(const Distribution& d);

double revenue_under(const Mechanism& m, const Distribution& d);
double revenue_under(const QuantileInfMechanism& m, const Distribution& d);

// Quadrature of t(v) f(v) dv between the jumps of t (Beta only); a second path for tests.
double revenue_by_quadrature(const Mechanism& m, const Distribution& d, double tol = 1e-10);

std::pair<double, double> optimal_posted_revenue(const Distribution& d);  // (price, revenue)

double performance_ratio(const Mechanism& m, const Distribution& d);
double performance_ratio(const QuantileInfMechanism& m, const Distribution& d);

// Largest v with P(V >= v) >= tail_prob, so that (v, tail_prob) is a valid quantile constraint.
double quantile_of(const Distribution& d, double tail_prob);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace rsm
