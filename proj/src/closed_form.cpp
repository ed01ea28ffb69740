#include "rsm/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rsm {

double bisect(const std::function<double(double)>& f, const RootSpec& spec) {
    double lo = spec.lo, hi = spec.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericError("bisection bracket without sign change");
    for (int it = 0; it < spec.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= spec.rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

void check_mean(double mu, double vbar) {
    if (!(vbar > 0.0)) throw DomainError("vbar must be positive");
    if (!(mu > 0.0) || mu > vbar) throw DomainError("mean must lie in (0, vbar]");
}

void check_quantile(double omega, double xi, double vbar) {
    if (!(vbar > 0.0)) throw DomainError("vbar must be positive");
    if (!(xi > 0.0) || xi > 1.0) throw DomainError("xi must lie in (0, 1]");
    if (!(omega >= 0.0) || omega > vbar) throw DomainError("omega must lie in [0, vbar]");
}

RatioResult make_result(double ratio, std::vector<double> prices, std::vector<double> probs, double vbar) {
    RatioResult res;
    res.ratio = ratio;
    res.mechanism = canonicalize(std::move(prices), std::move(probs), vbar);
    return res;
}

}  // namespace

RatioResult support_levels_ratio(double vlo, double vhi, std::vector<double> prices) {
    if (!(vlo > 0.0) || vlo > vhi) throw DomainError("support bounds must satisfy 0 < vlo <= vhi");
    if (prices.empty()) throw DomainError("empty price list");
    std::sort(prices.begin(), prices.end());
    if (prices.front() < vlo || prices.back() > vhi) throw DomainError("prices outside [vlo, vhi]");
    const std::size_t n = prices.size();
    if (std::abs(prices.front() - vlo) > 1e-12 * vhi) {
        // the lowest price misses vlo: a point mass just below v1 earns nothing
        return make_result(0.0, prices, std::vector<double>(n, 1.0 / static_cast<double>(n)), vhi);
    }
    auto next = [&](std::size_t i) { return i + 1 < n ? prices[i + 1] : vhi; };
    double denom = next(0) / prices[0];
    for (std::size_t i = 1; i < n; ++i) denom += (next(i) - prices[i]) / prices[i];
    const double r = 1.0 / denom;
    std::vector<double> x(n);
    x[0] = r * next(0) / vlo;
    for (std::size_t i = 1; i < n; ++i) x[i] = r * (next(i) - prices[i]) / prices[i];
    return make_result(r, prices, x, vhi);
}

RatioResult support_optimal(int n, double vlo, double vhi) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (!(vlo > 0.0) || vlo > vhi) throw DomainError("support bounds must satisfy 0 < vlo <= vhi");
    if (vlo == vhi) return make_result(1.0, {vhi}, {1.0}, vhi);
    const double rho = std::pow(vhi / vlo, 1.0 / n);
    const double R = 1.0 / (n * rho - (n - 1));
    std::vector<double> v(n), x(n);
    for (int i = 0; i < n; ++i) {
        v[i] = std::pow(vlo, static_cast<double>(n - i) / n) * std::pow(vhi, static_cast<double>(i) / n);
        x[i] = i == 0 ? rho * R : (rho - 1.0) * R;
    }
    return make_result(R, v, x, vhi);
}

double support_limit_ratio(double vlo, double vhi) {
    if (!(vlo > 0.0) || vlo > vhi) throw DomainError("support bounds must satisfy 0 < vlo <= vhi");
    return 1.0 / (std::log(vhi / vlo) + 1.0);
}

RatioResult mean_one_level(double mu, double vbar) {
    check_mean(mu, vbar);
    if (mu == vbar) return make_result(1.0, {vbar}, {1.0}, vbar);
    const double v1 = vbar - std::sqrt(vbar * vbar - mu * vbar);
    return make_result(1.0 - std::sqrt(1.0 - mu / vbar), {v1}, {1.0}, vbar);
}

namespace {

struct TwoLevel {
    double v1, v2, x1, R;
};

TwoLevel mean_low_branch(double mu, double vbar) {
    const double v1 = vbar - std::sqrt(vbar * vbar - mu * vbar);
    const double v2 = std::sqrt(v1 * vbar);
    return {v1, v2, 1.0 / (2.0 - std::sqrt(v1 / vbar)), 1.0 / (2.0 * std::sqrt(vbar / v1) - 1.0)};
}

TwoLevel mean_high_branch(double mu, double vbar) {
    const double v1 = vbar - std::sqrt(vbar * vbar - mu * vbar);
    const double v2 = (v1 + std::sqrt(v1 * v1 + 8.0 * v1 * vbar)) / 4.0;
    const double a = 2.0 * v2 * vbar - v2 * v2 - mu * vbar;
    const double D = (v2 - v1) * a + v1 * vbar * (vbar - mu);
    return {v1, v2, v2 * a / D, v1 * v2 * (vbar - mu) / D};
}

}  // namespace

MeanTwoLevel mean_two_level_detail(double mu, double vbar) {
    check_mean(mu, vbar);
    MeanTwoLevel out;
    const double ratio = mu / vbar;
    if (mu == vbar) {
        out.result = make_result(1.0, {vbar}, {1.0}, vbar);
        out.low_branch = false;
        out.v2_at_least_mu = true;
        return out;
    }
    out.low_branch = ratio <= 0.49;
    const TwoLevel t = out.low_branch ? mean_low_branch(mu, vbar) : mean_high_branch(mu, vbar);
    out.result = make_result(t.R, {t.v1, t.v2}, {t.x1, 1.0 - t.x1}, vbar);
    out.v2_at_least_mu = t.v2 >= mu;
    if (std::abs(ratio - 0.49) < 0.005) {
        out.crossover = bisect([](double m) { return mean_low_branch(m, 1.0).R - mean_high_branch(m, 1.0).R; },
                               {0.45, 0.55});
        std::ostringstream os;
        os.precision(6);
        os << "mu/vbar = " << ratio << " is near the 0.49 case split; the two R2 expressions cross at "
           << out.crossover;
        out.warning = os.str();
    }
    return out;
}

RatioResult mean_two_level(double mu, double vbar) { return mean_two_level_detail(mu, vbar).result; }

MeanVarTwoLevel meanvar_two_level_approx(double mu, double sigma) {
    if (!(mu > 0.0)) throw DomainError("mean must be positive");
    if (!(sigma >= 0.0)) throw DomainError("sigma must be nonnegative");
    MeanVarTwoLevel out;
    if (sigma == 0.0) {
        out.mechanism = canonicalize({mu}, {1.0}, mu);
        out.ratio = 1.0;
        return out;
    }
    const double s2 = sigma * sigma;
    double v1;
    if (sigma <= std::sqrt(std::sqrt(5.0) - 2.0) * mu) {
        v1 = bisect([&](double v) { return std::pow(mu - v, 3) - (2.0 * v - mu) * s2; }, {mu / 2.0, mu});
    } else {
        const double c = 2.0 / (9.0 + std::sqrt(5.0));
        v1 = bisect([&](double v) { return std::pow(mu - v, 3) - c * (7.0 * v - 3.0 * mu) * s2; },
                    {3.0 * mu / 7.0, mu});
    }
    const double tail = mu + s2 / (mu - v1);
    const double v2 = std::sqrt(v1 * tail);
    const double a = std::sqrt(s2 + mu * (mu - v1));
    const double x1 = a / (2.0 * a - std::sqrt(v1 * (mu - v1)));
    out.ratio = 1.0 / (2.0 * std::sqrt(tail / v1) - 1.0);
    out.mechanism = canonicalize({v1, v2}, {x1, 1.0 - x1}, v2);
    return out;
}

double meanvar_ratio_lower_bound(double mu, double sigma) {
    if (!(mu > 0.0)) throw DomainError("mean must be positive");
    const double c = sigma / mu;
    return 1.0 / ((7.0 * std::sqrt(3.0) / 3.0) * std::sqrt(4.0 / 7.0 + c * c));
}

RatioResult quantile_one_level(double omega, double xi, double vbar) {
    check_quantile(omega, xi, vbar);
    return make_result(std::min(xi, omega / vbar), {std::min(omega, xi * vbar)}, {1.0}, vbar);
}

RatioResult quantile_two_level(double omega, double xi, double vbar) {
    check_quantile(omega, xi, vbar);
    if (omega == 0.0) return make_result(0.0, {0.0}, {1.0}, vbar);
    double v1, v2, x1, R;
    if (xi * vbar <= omega) {
        v1 = xi * vbar;
        v2 = std::min(omega, std::sqrt(xi) * vbar);
        x1 = (v2 - xi * vbar) / (xi * vbar * vbar / v2 - 2.0 * xi * vbar + v2);
        R = (1.0 - xi) / (vbar / v2 + v2 / (xi * vbar) - 2.0);
        if (xi == 1.0) {
            // v1 = v2 = vbar; the expression above is 0/0
            x1 = 1.0;
            R = 1.0;
        }
    } else {
        v1 = omega;
        v2 = std::max(omega / xi, std::sqrt(omega * vbar));
        x1 = v2 * v2 / (v2 * v2 - omega * v2 + omega * vbar);
        R = 1.0 / (v2 / omega + vbar / v2 - 1.0);
    }
    return make_result(R, {v1, v2}, {x1, 1.0 - x1}, vbar);
}

double QuantileInfMechanism::density(double v) const {
    if (degenerate) return 0.0;
    if (v >= xi * phat && v < omega) return r / ((1.0 - xi) * v);
    if (v >= phat && v <= vbar) return r / v;
    return 0.0;
}

double QuantileInfMechanism::payment(double v) const {
    if (degenerate) return v >= omega ? omega : 0.0;
    if (v < xi * phat) return 0.0;
    if (v < omega) return r * (v - xi * phat) / (1.0 - xi);
    if (v < phat) return r * phat;
    return r * v;
}

double QuantileInfMechanism::payment_at(GridPoint at) const {
    if (!(at.value >= 0.0) || at.value > vbar) throw DomainError("payment evaluated outside [0, vbar]");
    if (at.side == Side::Exact) return payment(at.value);
    const double v = at.value;
    if (degenerate) return v > omega ? omega : 0.0;
    // t only jumps at omega
    if (v == omega) return r * (omega - xi * phat) / (1.0 - xi);
    return payment(v);
}

double QuantileInfMechanism::allocation(double v) const {
    if (degenerate) return v >= omega ? 1.0 : 0.0;
    if (v < xi * phat) return 0.0;
    if (v < omega) return r / (1.0 - xi) * std::log(v / (xi * phat));
    if (v < phat) return 1.0 - r * std::log(vbar / phat);
    return 1.0 - r * std::log(vbar / v);
}

double QuantileInfMechanism::total_mass() const {
    if (degenerate) return 1.0;
    return r / (1.0 - xi) * std::log(omega / (xi * phat)) + point_mass + r * std::log(vbar / phat);
}

std::vector<double> QuantileInfMechanism::kinks() const {
    if (degenerate) return {omega};
    std::vector<double> k{xi * phat, omega, phat};
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

QuantileInfMechanism quantile_inf(double omega, double xi, double vbar) {
    check_quantile(omega, xi, vbar);
    if (omega == 0.0) throw DomainError("quantile_inf undefined at omega = 0");
    QuantileInfMechanism m;
    m.omega = omega;
    m.xi = xi;
    m.vbar = vbar;
    if (xi == 1.0) {
        m.degenerate = true;
        m.r = omega / vbar;
        m.phat = omega;
        m.point_mass = 1.0;
        return m;
    }
    m.phat = std::min((2.0 - xi) * omega, vbar);
    if ((2.0 - xi) * omega < vbar) {
        m.r = 1.0 / (std::log(vbar) - std::log(omega * (2.0 - xi)) - std::log(xi * (2.0 - xi)) / (1.0 - xi) + 1.0);
    } else {
        m.r = 1.0 / ((vbar - omega) / ((1.0 - xi) * omega) + (std::log(omega) - std::log(xi * vbar)) / (1.0 - xi));
    }
    m.point_mass = m.r * (m.phat - omega) / (omega * (1.0 - xi));
    return m;
}

MaximinRevenue maximin_revenue_optimal(double mu, double vbar, int n) {
    check_mean(mu, vbar);
    if (n < 1) throw DomainError("n must be at least 1");
    MaximinRevenue out;
    if (mu == vbar) {
        out.v1 = vbar;
        out.revenue = vbar;
        out.mechanism = canonicalize({vbar}, {1.0}, vbar);
        return out;
    }
    const double dn = n;
    const double v1 = bisect([&](double v) { return mu / v + dn * std::pow(v / vbar, 1.0 / dn) - (dn + 1.0); },
                             {mu * 1e-200, mu});
    const double rho = std::pow(vbar / v1, 1.0 / dn);
    std::vector<double> v(n), x(n, 1.0 / dn);
    for (int j = 0; j < n; ++j) v[j] = v1 * std::pow(vbar / v1, j / dn);
    out.v1 = v1;
    out.revenue = (mu - v1) / (dn * (rho - 1.0));
    out.mechanism = canonicalize(v, x, vbar);
    return out;
}

double LinearPayment::payment(double v, double vbar) const {
    if (v < v1) return 0.0;
    if (v1 >= vbar) return v1;
    return (v - v1) / (std::log(vbar) - std::log(v1));
}

LinearPayment maximin_revenue_linear(double mu, double vbar) {
    check_mean(mu, vbar);
    LinearPayment lp;
    if (mu == vbar) {
        lp.v1 = vbar;
        lp.revenue = vbar;
        return lp;
    }
    lp.v1 = bisect([&](double v) { return mu - v * (1.0 + std::log(vbar) - std::log(v)); }, {mu * 1e-200, mu});
    lp.revenue = (mu - lp.v1) / (std::log(vbar) - std::log(lp.v1));
    return lp;
}

RegretResult minimax_regret_one_level(double mu, double vbar) {
    check_mean(mu, vbar);
    const double s = std::sqrt((vbar - mu) * (3.0 * mu + vbar));
    return {vbar * (mu + vbar - s) / (2.0 * mu), (mu - vbar + s) / 2.0};
}

}  // namespace rsm
