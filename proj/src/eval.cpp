#include "rsm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace rsm {

Distribution Distribution::make_beta(double alpha, double beta, double vbar) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("Beta parameters must be positive");
    if (!(vbar > 0.0)) throw DomainError("vbar must be positive");
    Distribution d;
    d.kind = Kind::Beta;
    d.alpha = alpha;
    d.beta = beta;
    d.vbar = vbar;
    return d;
}

Distribution Distribution::make_discrete(DiscreteDistribution atoms, double vbar) {
    if (!(vbar > 0.0)) throw DomainError("vbar must be positive");
    if (atoms.atoms.empty()) throw DomainError("empty distribution");
    for (const auto& a : atoms.atoms) {
        if (!(a.mass >= 0.0)) throw DomainError("negative mass");
        if (!(a.at.value >= 0.0) || a.at.value > vbar) throw DomainError("atom outside [0, vbar]");
    }
    if (std::abs(atoms.total_mass() - 1.0) > 1e-12) throw DomainError("masses do not sum to 1");
    Distribution d;
    d.kind = Kind::Discrete;
    d.vbar = vbar;
    d.atoms = std::move(atoms);
    return d;
}

Distribution Distribution::make_discrete(const std::vector<double>& values, const std::vector<double>& masses,
                                         double vbar) {
    if (values.size() != masses.size()) throw DomainError("values/masses length mismatch");
    DiscreteDistribution dd;
    for (std::size_t i = 0; i < values.size(); ++i) dd.atoms.push_back({exact(values[i]), masses[i]});
    return make_discrete(std::move(dd), vbar);
}

namespace {

void check_v(const Distribution& d, double v) {
    if (!(v >= 0.0) || v > d.vbar) throw DomainError("valuation outside [0, vbar]");
}

double beta_cdf(const Distribution& d, double v) {
    if (v <= 0.0) return 0.0;
    if (v >= d.vbar) return 1.0;
    return boost::math::ibeta(d.alpha, d.beta, v / d.vbar);
}

}  // namespace

double cdf(const Distribution& d, double v) {
    check_v(d, v);
    if (d.kind == Distribution::Kind::Beta) return beta_cdf(d, v);
    double s = 0.0;
    for (const auto& a : d.atoms.atoms)
        if (!(exact(v) < a.at)) s += a.mass;
    return s;
}

double cdf_left(const Distribution& d, double v) {
    check_v(d, v);
    if (d.kind == Distribution::Kind::Beta) return beta_cdf(d, v);
    double s = 0.0;
    for (const auto& a : d.atoms.atoms)
        if (a.at < exact(v)) s += a.mass;
    return s;
}

double tail(const Distribution& d, double v) {
    if (d.kind == Distribution::Kind::Beta) {
        check_v(d, v);
        if (v <= 0.0) return 1.0;
        if (v >= d.vbar) return 0.0;
        return boost::math::ibetac(d.alpha, d.beta, v / d.vbar);
    }
    return d.atoms.tail_mass(exact(v));
}

double pdf(const Distribution& d, double v) {
    if (d.kind != Distribution::Kind::Beta) throw DomainError("density of a discrete distribution");
    check_v(d, v);
    boost::math::beta_distribution<double> b(d.alpha, d.beta);
    return boost::math::pdf(b, v / d.vbar) / d.vbar;
}

double mean_of(const Distribution& d) {
    if (d.kind == Distribution::Kind::Beta) return d.alpha / (d.alpha + d.beta) * d.vbar;
    double s = 0.0;
    for (const auto& a : d.atoms.atoms) s += a.at.value * a.mass;
    return s;
}

double variance_of(const Distribution& d) {
    if (d.kind == Distribution::Kind::Beta) {
        const double ab = d.alpha + d.beta;
        return d.alpha * d.beta / (ab * ab * (ab + 1.0)) * d.vbar * d.vbar;
    }
    const double m = mean_of(d);
    double s = 0.0;
    for (const auto& a : d.atoms.atoms) s += (a.at.value - m) * (a.at.value - m) * a.mass;
    return s;
}

double revenue_under(const Mechanism& m, const Distribution& d) {
    if (std::abs(m.vbar - d.vbar) > 1e-12 * d.vbar) throw DomainError("mechanism and distribution disagree on vbar");
    double rev = 0.0;
    for (std::size_t i = 0; i < m.prices.size(); ++i) rev += m.prices[i] * m.probs[i] * tail(d, m.prices[i]);
    return rev;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps, int depth) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
            const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
            const double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
            return rec(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1) +
                   rec(mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, tol, 50);
}

double revenue_under(const QuantileInfMechanism& m, const Distribution& d) {
    if (std::abs(m.vbar - d.vbar) > 1e-12 * d.vbar) throw DomainError("mechanism and distribution disagree on vbar");
    if (d.kind == Distribution::Kind::Discrete) {
        double rev = 0.0;
        for (const auto& a : d.atoms.atoms) rev += m.payment_at(a.at) * a.mass;
        return rev;
    }
    if (m.degenerate) return m.omega * tail(d, m.omega);
    // E t(V) = integral of P(V >= v) dt(v): t grows at rate r/(1-xi) on [xi phat, omega), jumps at omega,
    // is flat until phat and grows at rate r afterwards.
    auto surv = [&d](double v) { return tail(d, v); };
    const double lo = m.xi * m.phat;
    double rev = m.r / (1.0 - m.xi) * adaptive_simpson(surv, lo, m.omega, 1e-10);
    const double jump = m.payment(m.omega) - m.payment_at(left_of(m.omega));
    rev += jump * tail(d, m.omega);
    rev += m.r * adaptive_simpson(surv, m.phat, m.vbar, 1e-10);
    return rev;
}

double revenue_by_quadrature(const Mechanism& m, const Distribution& d, double tol) {
    if (d.kind != Distribution::Kind::Beta) throw DomainError("quadrature path needs a continuous distribution");
    std::vector<double> cuts{0.0};
    for (double p : m.prices) cuts.push_back(p);
    cuts.push_back(d.vbar);
    std::sort(cuts.begin(), cuts.end());
    double rev = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (!(b > a)) continue;
        // t is constant on [a, b); evaluate it at the midpoint
        const double t = payment_at(m, exact(0.5 * (a + b)));
        if (t == 0.0) continue;
        // tanh-sinh never samples the endpoints, where the Beta density may be infinite
        boost::math::quadrature::tanh_sinh<double> integrator;
        rev += t * integrator.integrate([&](double v) { return pdf(d, v); }, a, b, tol);
    }
    return rev;
}

std::pair<double, double> optimal_posted_revenue(const Distribution& d) {
    if (d.kind == Distribution::Kind::Discrete) {
        double best_p = 0.0, best = 0.0;
        for (const auto& a : d.atoms.atoms) {
            if (!(a.at.value > 0.0)) continue;
            // price at the atom (or just below it for a left-limit atom)
            const double rev = a.at.value * d.atoms.tail_mass(a.at);
            if (rev > best || (rev == best && a.at.value < best_p)) {
                best = rev;
                best_p = a.at.value;
            }
        }
        return {best_p, best};
    }
    auto rev = [&d](double p) { return p * tail(d, p); };
    const int N = 10000;
    double best_p = 0.0, best = -1.0;
    for (int k = 0; k <= N; ++k) {
        const double p = d.vbar * k / N;
        const double r = rev(p);
        if (r > best) {
            best = r;
            best_p = p;
        }
    }
    double a = std::max(0.0, best_p - d.vbar / N), b = std::min(d.vbar, best_p + d.vbar / N);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), e = a + g * (b - a);
    double fc = rev(c), fe = rev(e);
    while (b - a > 1e-10) {
        if (fc >= fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = rev(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = rev(e);
        }
    }
    const double p = 0.5 * (a + b);
    const double r = rev(p);
    if (r >= best) return {p, r};
    return {best_p, best};
}

namespace {

double ratio_of(double rev, const Distribution& d) {
    const double opt = optimal_posted_revenue(d).second;
    if (!(opt > 0.0)) throw DomainError("hindsight revenue is 0");
    return rev / opt;
}

}  // namespace

double performance_ratio(const Mechanism& m, const Distribution& d) { return ratio_of(revenue_under(m, d), d); }

double performance_ratio(const QuantileInfMechanism& m, const Distribution& d) {
    return ratio_of(revenue_under(m, d), d);
}

double quantile_of(const Distribution& d, double tail_prob) {
    if (!(tail_prob > 0.0) || !(tail_prob < 1.0)) throw DomainError("tail probability must lie in (0, 1)");
    if (d.kind == Distribution::Kind::Discrete) {
        // P(V >= v) is constant between atoms, so the supremum sits on an atom value
        double best = 0.0;
        for (const auto& a : d.atoms.atoms)
            if (a.at.value > best && d.atoms.tail_mass(exact(a.at.value)) >= tail_prob) best = a.at.value;
        return best;
    }
    double lo = 0.0, hi = d.vbar;
    if (tail(d, hi) >= tail_prob) return hi;
    while (hi - lo > 1e-10 * d.vbar) {
        const double mid = 0.5 * (lo + hi);
        if (tail(d, mid) >= tail_prob) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rsm
