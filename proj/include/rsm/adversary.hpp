#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rsm/ambiguity.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/core.hpp"

namespace rsm {

struct WorstCaseCertificate {
    double ratio = 0.0;  // competitive ratio, or the metric value for the alpha family
    GridPoint price;     // hindsight price
    DiscreteDistribution distribution;
    std::vector<std::string> warnings;
};

using PaymentFn = std::function<double(GridPoint)>;

struct AdversaryOptions {
    std::size_t dense_fill = 0;  // extra uniformly spaced Exact atoms on (0, vbar]
};

WorstCaseCertificate worst_case_ratio(const Mechanism& m, const AmbiguitySet& set, const AdversaryOptions& opts = {});

// General payment function; mech_points are the valuations where t changes form.
WorstCaseCertificate worst_case_ratio(const PaymentFn& t, const std::vector<double>& mech_points,
                                      const AmbiguitySet& set, const AdversaryOptions& opts = {});

WorstCaseCertificate worst_case_ratio(const QuantileInfMechanism& m, const AmbiguitySet& set,
                                      const AdversaryOptions& opts = {});

WorstCaseCertificate worst_case_alpha_metric(const Mechanism& m, double mu, double vbar, double alpha);

// Truncated grid on [0, vmax]; vmax <= 0 selects mu + 50 sigma.
WorstCaseCertificate worst_case_meanvar(const Mechanism& m, double mu, double sigma, double vmax = 0.0,
                                        std::size_t gridsize = 4000);

// Recompute Rev(F) / (p (1 - F(p-))) from the raw atoms.
double recompute_ratio(const PaymentFn& t, const WorstCaseCertificate& c);

// Ratio recomputation within tol and every phi_k constraint within 1e-8.
bool certificate_consistent(const PaymentFn& t, const WorstCaseCertificate& c, const AmbiguitySet& set,
                            double tol = 1e-7);

PaymentFn step_payment(const Mechanism& m);

}  // namespace rsm
