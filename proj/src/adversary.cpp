#include "rsm/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsm/lp_solver.hpp"

namespace rsm {

PaymentFn step_payment(const Mechanism& m) {
    return [m](GridPoint at) { return payment_at(m, at); };
}

namespace {

std::vector<GridPoint> both_sides(std::vector<double> values, double vbar, std::size_t dense) {
    values.push_back(vbar);
    for (std::size_t k = 1; k <= dense; ++k) values.push_back(vbar * static_cast<double>(k) / static_cast<double>(dense));
    std::vector<GridPoint> sites{exact(0.0)};
    for (double v : values) {
        if (v > 0.0) sites.push_back(left_of(v));
        sites.push_back(exact(v));
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    return sites;
}

struct InnerResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> h;
};

// min sum c_s h_s  s.t.  sum_{s >= p} h_s = 1,  extra rows
InnerResult solve_inner(const std::vector<double>& cost, const std::vector<GridPoint>& sites, GridPoint p,
                        const std::vector<LpRow>& extra) {
    const std::size_t S = sites.size();
    LinearProgram lp(S);
    for (std::size_t s = 0; s < S; ++s) lp.objective[s] = -cost[s];
    std::vector<double> tail(S, 0.0);
    for (std::size_t s = 0; s < S; ++s)
        if (!(sites[s] < p)) tail[s] = 1.0;
    lp.add_row(std::move(tail), Sense::EQ, 1.0);
    for (const auto& r : extra) lp.rows.push_back(r);
    SolverOptions so;
    so.rule = PivotRule::Dantzig;
    LpSolution sol = solve_lp(lp, so);
    if (sol.status == LpStatus::NumericFailure) {
        so.rule = PivotRule::Bland;
        sol = solve_lp(lp, so);
    }
    InnerResult out;
    if (sol.status == LpStatus::Infeasible) return out;
    if (!sol.optimal()) throw NumericError(std::string("adversary LP ended with status ") + status_name(sol.status));
    out.feasible = true;
    out.value = -sol.objective;
    out.h = sol.x;
    return out;
}

DiscreteDistribution normalized(const std::vector<GridPoint>& sites, const std::vector<double>& h) {
    double total = 0.0;
    for (double x : h) total += std::max(x, 0.0);
    DiscreteDistribution d;
    for (std::size_t s = 0; s < sites.size(); ++s)
        if (h[s] > 0.0) d.atoms.push_back({sites[s], h[s] / total});
    return d;
}

// min over hindsight candidates p of the inner value / p.value (or the raw value when per_price is false)
template <class Inner>
WorstCaseCertificate scan_prices(const std::vector<GridPoint>& sites, const std::vector<GridPoint>& prices,
                                 Inner&& inner, bool divide_by_price) {
    WorstCaseCertificate best;
    bool found = false;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_h;
    for (const GridPoint& p : prices) {
        if (!(p.value > 0.0)) continue;
        InnerResult r = inner(p);
        if (!r.feasible) continue;
        const double v = divide_by_price ? r.value / p.value : r.value;
        if (!found || v < best_value - 1e-12 * (1.0 + std::abs(best_value))) {
            found = true;
            best_value = v;
            best.price = p;
            best_h = std::move(r.h);
        }
    }
    if (!found) throw DomainError("no feasible distribution for any hindsight price: inconsistent ambiguity set");
    best.ratio = best_value;
    best.distribution = normalized(sites, best_h);
    return best;
}

}  // namespace

double recompute_ratio(const PaymentFn& t, const WorstCaseCertificate& c) {
    double rev = 0.0;
    for (const auto& a : c.distribution.atoms) rev += t(a.at) * a.mass;
    const double opt = c.price.value * c.distribution.tail_mass(c.price);
    return rev / opt;
}

bool certificate_consistent(const PaymentFn& t, const WorstCaseCertificate& c, const AmbiguitySet& set, double tol) {
    if (std::abs(c.distribution.total_mass() - 1.0) > 1e-9) return false;
    for (std::size_t k = 0; k < set.K(); ++k) {
        double s = 0.0;
        for (const auto& a : c.distribution.atoms) s += phi_eval(set, k, a.at) * a.mass;
        if (s < -1e-8) return false;
    }
    const double r = recompute_ratio(t, c);
    return std::isfinite(r) && std::abs(r - c.ratio) <= tol;
}

WorstCaseCertificate worst_case_ratio(const PaymentFn& t, const std::vector<double>& mech_points,
                                      const AmbiguitySet& set, const AdversaryOptions& opts) {
    std::vector<GridPoint> sites;
    if (forces_point_mass_at_vbar(set)) {
        sites = {exact(set.vbar)};
    } else {
        std::vector<double> values = mech_points;
        for (double b : set.breakpoints()) values.push_back(b);
        for (double v : values)
            if (!(v >= 0.0) || v > set.vbar) throw DomainError("mechanism point outside [0, vbar]");
        sites = both_sides(values, set.vbar, opts.dense_fill);
    }
    const std::size_t S = sites.size();
    std::vector<double> cost(S);
    for (std::size_t s = 0; s < S; ++s) cost[s] = t(sites[s]);
    std::vector<LpRow> extra;
    for (std::size_t k = 0; k < set.K(); ++k) {
        LpRow r;
        r.sense = Sense::GE;
        for (const auto& s : sites) r.coef.push_back(set.phi[k].eval(s));
        extra.push_back(std::move(r));
    }
    return scan_prices(sites, sites, [&](GridPoint p) { return solve_inner(cost, sites, p, extra); }, true);
}

WorstCaseCertificate worst_case_ratio(const Mechanism& m, const AmbiguitySet& set, const AdversaryOptions& opts) {
    if (std::abs(m.vbar - set.vbar) > 1e-12 * set.vbar) throw DomainError("mechanism and ambiguity set disagree on vbar");
    return worst_case_ratio(step_payment(m), m.prices, set, opts);
}

WorstCaseCertificate worst_case_ratio(const QuantileInfMechanism& m, const AmbiguitySet& set,
                                      const AdversaryOptions& opts) {
    if (std::abs(m.vbar - set.vbar) > 1e-12 * set.vbar) throw DomainError("mechanism and ambiguity set disagree on vbar");
    return worst_case_ratio([&m](GridPoint g) { return m.payment_at(g); }, m.kinks(), set, opts);
}

WorstCaseCertificate worst_case_alpha_metric(const Mechanism& m, double mu, double vbar, double alpha) {
    if (!(alpha >= 0.0) || alpha > 1.0) throw DomainError("alpha must lie in [0, 1]");
    if (!(mu > 0.0) || mu > vbar) throw DomainError("mean must lie in (0, vbar]");
    if (std::abs(m.vbar - vbar) > 1e-12 * vbar) throw DomainError("mechanism and ambiguity set disagree on vbar");
    const std::vector<GridPoint> sites = mu >= vbar ? std::vector<GridPoint>{exact(vbar)} : both_sides(m.prices, vbar, 0);
    const std::size_t S = sites.size();
    std::vector<double> pay(S);
    for (std::size_t s = 0; s < S; ++s) pay[s] = payment_at(m, sites[s]);
    auto inner = [&](GridPoint p) {
        LinearProgram lp(S);
        std::vector<double> ones(S, 1.0), dev(S);
        for (std::size_t s = 0; s < S; ++s) {
            dev[s] = sites[s].value - mu;
            lp.objective[s] = -(pay[s] - (sites[s] < p ? 0.0 : alpha * p.value));
        }
        lp.add_row(std::move(ones), Sense::EQ, 1.0);
        lp.add_row(std::move(dev), Sense::EQ, 0.0);
        const LpSolution sol = solve_lp(lp);
        InnerResult out;
        if (sol.status == LpStatus::Infeasible) return out;
        if (!sol.optimal()) throw NumericError("adversary LP failed");
        out.feasible = true;
        out.value = -sol.objective;
        out.h = sol.x;
        return out;
    };
    return scan_prices(sites, sites, inner, false);
}

WorstCaseCertificate worst_case_meanvar(const Mechanism& m, double mu, double sigma, double vmax,
                                        std::size_t gridsize) {
    if (!(mu > 0.0) || !(sigma >= 0.0)) throw DomainError("need mu > 0 and sigma >= 0");
    if (vmax <= 0.0) vmax = mu + 50.0 * sigma;
    if (sigma == 0.0 && vmax < mu) vmax = mu;
    if (!(vmax >= mu) || (sigma > 0.0 && !(vmax > mu))) throw DomainError("truncation bound must exceed the mean");
    if (gridsize < 1) throw DomainError("gridsize must be positive");
    std::vector<GridPoint> sites;
    for (std::size_t k = 0; k <= gridsize; ++k)
        sites.push_back(exact(vmax * static_cast<double>(k) / static_cast<double>(gridsize)));
    if (sigma == 0.0) sites.push_back(exact(mu));
    for (double v : m.prices) {
        if (v > vmax) continue;
        // with sigma = 0 a left limit is not a limit of feasible distributions
        if (v > 0.0 && sigma > 0.0) sites.push_back(left_of(v));
        sites.push_back(exact(v));
    }
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    const std::size_t S = sites.size();
    auto pay = [&m](GridPoint g) {
        double t = 0.0;
        for (std::size_t l = 0; l < m.prices.size(); ++l)
            if (g.side == Side::Exact ? m.prices[l] <= g.value : m.prices[l] < g.value) t += m.prices[l] * m.probs[l];
        return t;
    };
    std::vector<double> cost(S);
    LpRow mean_row{{}, Sense::EQ, 0.0}, var_row{{}, Sense::LE, 0.0};
    for (std::size_t s = 0; s < S; ++s) {
        const double v = sites[s].value;
        cost[s] = pay(sites[s]);
        mean_row.coef.push_back(v - mu);
        var_row.coef.push_back(v * v - mu * mu - sigma * sigma);
    }
    // unit-scale the moment rows; the second moment dwarfs the first on long grids
    for (LpRow* r : {&mean_row, &var_row}) {
        double big = 0.0;
        for (double a : r->coef) big = std::max(big, std::abs(a));
        if (big > 0.0)
            for (double& a : r->coef) a /= big;
    }
    const std::vector<LpRow> extra{mean_row, var_row};
    WorstCaseCertificate c =
        scan_prices(sites, sites, [&](GridPoint p) { return solve_inner(cost, sites, p, extra); }, true);
    const double top = sites.back().value;
    double top_mass = 0.0;
    for (const auto& a : c.distribution.atoms)
        if (a.at.value >= top - vmax / static_cast<double>(gridsize) * 0.5) top_mass += a.mass;
    if (top_mass > 1e-6) {
        std::ostringstream os;
        os << "worst case puts " << top_mass << " mass on the top grid cell; truncation at " << vmax << " may bias the ratio";
        c.warnings.push_back(os.str());
    }
    return c;
}

}  // namespace rsm
