#include "rsm/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rsm {

namespace {

void check_vbar(double vbar) {
    if (!(vbar > 0.0) || !std::isfinite(vbar)) throw DomainError("vbar must be positive and finite");
}

void check_in_range(double v, double vbar, const char* what) {
    if (!(v >= 0.0) || v > vbar) throw DomainError(std::string(what) + " outside [0, vbar]");
}

std::vector<double> sorted_knots(std::vector<double> pts, double vbar) {
    pts.push_back(0.0);
    pts.push_back(vbar);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

using Affine = std::pair<double, double>;  // slope, intercept

// piece(mid) gives the affine form on the open piece containing mid; point(v) gives knot values.
PiecewiseMonotoneFn build_fn(std::vector<double> knots, const std::function<Affine(double)>& piece,
                             const std::function<double(double)>& point) {
    PiecewiseMonotoneFn fn;
    fn.knots = std::move(knots);
    for (std::size_t s = 0; s + 1 < fn.knots.size(); ++s) {
        const auto [sl, ic] = piece(0.5 * (fn.knots[s] + fn.knots[s + 1]));
        if (sl < 0.0) throw DomainError("constraint function decreasing within a piece");
        fn.slope.push_back(sl);
        fn.intercept.push_back(ic);
    }
    for (double k : fn.knots) fn.at_knot.push_back(point(k));
    return fn;
}

}  // namespace

double PiecewiseMonotoneFn::eval(GridPoint at) const {
    const double v = at.value;
    if (!(v >= knots.front()) || v > knots.back()) throw DomainError("phi evaluated outside [0, vbar]");
    auto it = std::lower_bound(knots.begin(), knots.end(), v);
    const std::size_t idx = static_cast<std::size_t>(it - knots.begin());
    if (at.side == Side::Exact) {
        if (it != knots.end() && *it == v) return at_knot[idx];
        return piece_value(idx - 1, v);
    }
    if (v <= 0.0) throw DomainError("left limit at 0");
    // piece s with knots[s] < v <= knots[s+1]
    return piece_value(idx - 1, v);
}

const char* set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::Support: return "support";
        case SetKind::Mean: return "mean";
        case SetKind::Quantile: return "quantile";
        case SetKind::MultiSegment: return "multisegment";
        case SetKind::SegmentedMean: return "segmentedmean";
    }
    return "?";
}

std::vector<double> AmbiguitySet::breakpoints() const {
    std::vector<double> b;
    for (const auto& f : phi)
        for (double k : f.knots)
            if (k > 0.0 && k < vbar) b.push_back(k);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

AmbiguitySet make_support(double vlo, double vbar) {
    check_vbar(vbar);
    check_in_range(vlo, vbar, "support lower bound");
    AmbiguitySet s;
    s.vbar = vbar;
    s.kind = SetKind::Support;
    s.params.vlo = vlo;
    auto f = [vlo](double v) { return v >= vlo ? 0.0 : -1.0; };
    s.phi.push_back(build_fn(sorted_knots({vlo}, vbar), [f](double m) { return Affine{0.0, f(m)}; }, f));
    return s;
}

AmbiguitySet make_mean(double mu, double vbar) {
    check_vbar(vbar);
    if (!(mu > 0.0) || mu > vbar) throw DomainError("mean must lie in (0, vbar]");
    AmbiguitySet s;
    s.vbar = vbar;
    s.kind = SetKind::Mean;
    s.params.mu = mu;
    s.phi.push_back(build_fn(sorted_knots({}, vbar), [mu](double) { return Affine{1.0, -mu}; },
                             [mu](double v) { return v - mu; }));
    return s;
}

AmbiguitySet make_quantile(std::vector<double> omega, std::vector<double> xi, double vbar) {
    check_vbar(vbar);
    if (omega.empty() || omega.size() != xi.size()) throw DomainError("quantile constraints need matching (omega, xi)");
    AmbiguitySet s;
    s.vbar = vbar;
    s.kind = SetKind::Quantile;
    for (std::size_t k = 0; k < omega.size(); ++k) {
        const double w = omega[k], x = xi[k];
        check_in_range(w, vbar, "omega");
        if (!(x > 0.0) || x > 1.0) throw DomainError("xi must lie in (0, 1]");
        auto f = [w, x](double v) { return (v >= w ? 1.0 : 0.0) - x; };
        s.phi.push_back(build_fn(sorted_knots({w}, vbar), [f](double m) { return Affine{0.0, f(m)}; }, f));
    }
    s.params.omega = std::move(omega);
    s.params.xi = std::move(xi);
    return s;
}

namespace {

void check_intervals(const std::vector<Interval>& I, std::size_t n, double vbar) {
    if (I.empty()) throw DomainError("empty interval list");
    if (I.size() != n) throw DomainError("interval/level count mismatch");
    for (const auto& iv : I) {
        check_in_range(iv.lo, vbar, "interval end");
        check_in_range(iv.hi, vbar, "interval end");
        if (iv.lo > iv.hi) throw DomainError("interval with lo > hi");
    }
}

}  // namespace

AmbiguitySet make_multisegment(std::vector<Interval> intervals, std::vector<double> xi, double vbar) {
    check_vbar(vbar);
    check_intervals(intervals, xi.size(), vbar);
    AmbiguitySet s;
    s.vbar = vbar;
    s.kind = SetKind::MultiSegment;
    for (std::size_t k = 0; k < xi.size(); ++k) {
        const double a = intervals[k].lo, b = intervals[k].hi, x = xi[k];
        if (!(x > 0.0) || x > 1.0) throw DomainError("xi must lie in (0, 1]");
        auto f = [a, b, x](double v) { return (v >= a && v <= b ? 1.0 : 0.0) - x; };
        s.phi.push_back(build_fn(sorted_knots({a, b}, vbar), [f](double m) { return Affine{0.0, f(m)}; }, f));
    }
    s.params.intervals = std::move(intervals);
    s.params.levels = std::move(xi);
    return s;
}

AmbiguitySet make_segmentedmean(std::vector<Interval> intervals, std::vector<double> mu, double vbar) {
    check_vbar(vbar);
    check_intervals(intervals, mu.size(), vbar);
    AmbiguitySet s;
    s.vbar = vbar;
    s.kind = SetKind::SegmentedMean;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const double a = intervals[k].lo, b = intervals[k].hi, m = mu[k];
        auto f = [a, b, m](double v) { return v >= a && v <= b ? v - m : 0.0; };
        auto piece = [a, b, m](double mid) { return mid >= a && mid <= b ? Affine{1.0, -m} : Affine{0.0, 0.0}; };
        s.phi.push_back(build_fn(sorted_knots({a, b}, vbar), piece, f));
    }
    s.params.intervals = std::move(intervals);
    s.params.levels = std::move(mu);
    return s;
}

AmbiguitySet make_standard_set(SetKind kind, const SetParams& p, double vbar) {
    switch (kind) {
        case SetKind::Support: return make_support(p.vlo, vbar);
        case SetKind::Mean: return make_mean(p.mu, vbar);
        case SetKind::Quantile: return make_quantile(p.omega, p.xi, vbar);
        case SetKind::MultiSegment: return make_multisegment(p.intervals, p.levels, vbar);
        case SetKind::SegmentedMean: return make_segmentedmean(p.intervals, p.levels, vbar);
    }
    throw DomainError("unknown set kind");
}

double phi_eval(const AmbiguitySet& set, std::size_t k, GridPoint at) {
    if (k >= set.phi.size()) throw std::out_of_range("constraint index out of range");
    return set.phi[k].eval(at);
}

bool forces_point_mass_at_vbar(const AmbiguitySet& set) {
    for (const auto& f : set.phi) {
        bool negative_below = f.at_knot.front() < 0.0;
        for (std::size_t s = 0; negative_below && s < f.pieces(); ++s) {
            const double right = f.piece_value(s, f.knots[s + 1]);
            // open piece: sup is the right limit, not attained when slope > 0
            negative_below = right < 0.0 || (right <= 0.0 && f.slope[s] > 0.0);
            if (s + 1 < f.pieces()) negative_below = negative_below && f.at_knot[s + 1] < 0.0;
        }
        if (negative_below && f.at_knot.back() >= 0.0) return true;
    }
    return false;
}

bool jumps_up_at_vbar(const AmbiguitySet& set) {
    for (const auto& f : set.phi)
        if (f.at_knot.back() > f.left_limit(set.vbar)) return true;
    return false;
}

std::vector<std::size_t> MergedGrid::members(std::size_t j) const {
    std::vector<std::size_t> m(below.at(j));
    for (std::size_t l = 0; l < m.size(); ++l) m[l] = l;
    return m;
}

MergedGrid merged_grid(const AmbiguitySet& set, const std::vector<double>& prices) {
    MergedGrid g;
    g.prices = prices;
    for (double p : prices) check_in_range(p, set.vbar, "price");
    std::sort(g.prices.begin(), g.prices.end());
    g.prices.erase(std::unique(g.prices.begin(), g.prices.end()), g.prices.end());
    g.u = g.prices;
    for (double b : set.breakpoints()) g.u.push_back(b);
    g.u.push_back(set.vbar);
    std::sort(g.u.begin(), g.u.end());
    g.u.erase(std::unique(g.u.begin(), g.u.end()), g.u.end());
    for (double u : g.u)
        g.below.push_back(static_cast<std::size_t>(std::lower_bound(g.prices.begin(), g.prices.end(), u) - g.prices.begin()));
    g.phi_ll.assign(set.K(), {});
    for (std::size_t k = 0; k < set.K(); ++k)
        for (double u : g.u) g.phi_ll[k].push_back(u > 0.0 ? set.phi[k].left_limit(u) : set.phi[k].eval(exact(0.0)));
    return g;
}

}  // namespace rsm
