#include "rsm/lp_builder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rsm {

namespace {

bool counts(double price, GridPoint at) { return at.side == Side::Exact ? price <= at.value : price < at.value; }

std::vector<double> unique_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Mechanism mechanism_from(const std::vector<double>& prices, std::vector<double> x, double vbar) {
    for (double& p : x) p = std::max(p, 0.0);
    double s = 0.0;
    for (double p : x) s += p;
    for (double& p : x) p /= s;
    return canonicalize(prices, std::move(x), vbar);
}

void check_prices(const std::vector<double>& prices, double vbar) {
    if (prices.empty()) throw DomainError("empty price list");
    for (double p : prices)
        if (!(p >= 0.0) || p > vbar) throw DomainError("price outside [0, vbar]");
}

}  // namespace

RatioLpLayout ratio_lp_layout(const AmbiguitySet& set, const std::vector<double>& prices) {
    check_prices(prices, set.vbar);
    RatioLpLayout L;
    L.K = set.K();
    L.prices = unique_sorted(prices);
    if (forces_point_mass_at_vbar(set)) {
        L.point_mass = true;
        L.sites = {exact(set.vbar)};
        L.hindsight = {0};
        return L;
    }
    const MergedGrid g = merged_grid(set, L.prices);
    for (double u : g.u) L.sites.push_back(u > 0.0 ? left_of(u) : exact(0.0));
    if (jumps_up_at_vbar(set)) L.sites.push_back(exact(set.vbar));
    for (std::size_t j = 0; j < L.sites.size(); ++j)
        if (L.sites[j].value > 0.0) L.hindsight.push_back(j);
    return L;
}

std::vector<double> ratio_lp_row(const AmbiguitySet& set, const RatioLpLayout& L, std::size_t i, std::size_t j) {
    std::vector<double> c(L.num_cols(), 0.0);
    const GridPoint s = L.sites[j], p = L.sites[L.hindsight[i]];
    if (!(s < p)) c[L.r_col()] = p.value;
    for (std::size_t k = 0; k < L.K; ++k) c[L.lambda_col(k, i)] = set.phi[k].eval(s);
    for (std::size_t l = 0; l < L.prices.size(); ++l)
        if (counts(L.prices[l], s)) c[L.x_col(l)] = -L.prices[l];
    return c;
}

namespace {

LinearProgram skeleton(const RatioLpLayout& L) {
    LinearProgram lp(L.num_cols());
    lp.objective[L.r_col()] = 1.0;
    return lp;
}

void add_normalization(LinearProgram& lp, const RatioLpLayout& L) {
    std::vector<double> c(L.num_cols(), 0.0);
    for (std::size_t l = 0; l < L.prices.size(); ++l) c[L.x_col(l)] = 1.0;
    lp.add_row(std::move(c), Sense::EQ, 1.0);
}

RatioResult extract(const LpSolution& sol, const RatioLpLayout& L, double vbar) {
    RatioResult res;
    res.ratio = std::clamp(sol.x[L.r_col()], 0.0, 1.0);
    std::vector<double> x(L.prices.size());
    for (std::size_t l = 0; l < x.size(); ++l) x[l] = sol.x[L.x_col(l)];
    res.mechanism = mechanism_from(L.prices, std::move(x), vbar);
    res.dualvars.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(L.K * L.hindsight.size()));
    return res;
}

[[noreturn]] void fail(LpStatus s) {
    if (s == LpStatus::Infeasible) throw DomainError("ratio LP infeasible: inconsistent ambiguity set");
    throw NumericError(std::string("ratio LP ended with status ") + status_name(s));
}

}  // namespace

std::pair<LinearProgram, RatioLpLayout> build_ratio_lp(const AmbiguitySet& set, const std::vector<double>& prices) {
    RatioLpLayout L = ratio_lp_layout(set, prices);
    LinearProgram lp = skeleton(L);
    lp.rows.reserve(L.num_rows());
    for (std::size_t i = 0; i < L.hindsight.size(); ++i)
        for (std::size_t j = 0; j < L.sites.size(); ++j) lp.add_row(ratio_lp_row(set, L, i, j), Sense::LE, 0.0);
    add_normalization(lp, L);
    return {std::move(lp), std::move(L)};
}

RatioResult solve_ratio_given_prices(const AmbiguitySet& set, const std::vector<double>& prices,
                                     const RatioSolveOptions& opts, RatioLpStats* stats) {
    RatioLpLayout L = ratio_lp_layout(set, prices);
    const std::size_t H = L.hindsight.size(), S = L.sites.size();
    if (L.num_rows() <= opts.dense_row_limit) {
        auto [lp, layout] = build_ratio_lp(set, prices);
        const LpSolution sol = solve_lp(lp);
        if (!sol.optimal()) fail(sol.status);
        if (stats) *stats = {lp.rows.size(), 1, sol.pivots};
        return extract(sol, layout, set.vbar);
    }

    // Lazy rows: start from the diagonal and both ends of each hindsight block, then add the most
    // violated row of every block until none is violated.
    std::vector<std::vector<double>> phi(set.K(), std::vector<double>(S));
    for (std::size_t k = 0; k < set.K(); ++k)
        for (std::size_t j = 0; j < S; ++j) phi[k][j] = set.phi[k].eval(L.sites[j]);
    std::vector<double> pay_coef(S);  // t(site_j) = sum over counted levels; recomputed per solution

    LinearProgram lp = skeleton(L);
    add_normalization(lp, L);
    std::vector<char> active(H * S, 0);
    auto activate = [&](std::size_t i, std::size_t j) {
        if (active[i * S + j]) return;
        active[i * S + j] = 1;
        lp.add_row(ratio_lp_row(set, L, i, j), Sense::LE, 0.0);
    };
    for (std::size_t i = 0; i < H; ++i) {
        activate(i, L.hindsight[i]);
        activate(i, S - 1);
        activate(i, 0);
    }
    SolverOptions so;
    so.rule = PivotRule::Dantzig;
    RatioLpStats st;
    for (;;) {
        const LpSolution sol = solve_lp(lp, so);
        ++st.rounds;
        st.pivots += sol.pivots;
        if (!sol.optimal()) fail(sol.status);
        const double r = sol.x[L.r_col()];
        for (std::size_t j = 0; j < S; ++j) {
            double t = 0.0;
            for (std::size_t l = 0; l < L.prices.size(); ++l)
                if (counts(L.prices[l], L.sites[j])) t += L.prices[l] * sol.x[L.x_col(l)];
            pay_coef[j] = t;
        }
        std::size_t added = 0;
        for (std::size_t i = 0; i < H; ++i) {
            const GridPoint p = L.sites[L.hindsight[i]];
            double worst = opts.row_tol;
            std::size_t arg = S;
            for (std::size_t j = 0; j < S; ++j) {
                if (active[i * S + j]) continue;
                double v = -pay_coef[j];
                if (!(L.sites[j] < p)) v += r * p.value;
                for (std::size_t k = 0; k < set.K(); ++k) v += phi[k][j] * sol.x[L.lambda_col(k, i)];
                if (v > worst) {
                    worst = v;
                    arg = j;
                }
            }
            if (arg < S) {
                activate(i, arg);
                ++added;
            }
        }
        if (added == 0) {
            st.rows_used = lp.rows.size();
            if (stats) *stats = st;
            return extract(sol, L, set.vbar);
        }
    }
}

LinearProgram build_alpha_metric_lp(double mu, double vbar, const std::vector<double>& prices, double alpha) {
    if (!(alpha >= 0.0) || alpha > 1.0) throw DomainError("alpha must lie in [0, 1]");
    if (!(mu > 0.0) || mu > vbar) throw DomainError("mean must lie in (0, vbar]");
    check_prices(prices, vbar);
    const std::vector<double> v = unique_sorted(prices);
    const std::size_t n = v.size();
    LinearProgram lp(1 + (n + 1) + n);
    const std::size_t D = 0;
    auto lam = [](std::size_t i) { return 1 + i; };
    auto xc = [n](std::size_t l) { return 1 + (n + 1) + l; };
    lp.objective[D] = 1.0;
    for (std::size_t i = 0; i <= n; ++i) lp.bounds[lam(i)] = VarBound::Free;
    lp.bounds[D] = VarBound::Free;
    auto vj = [&](std::size_t j) { return j < n ? v[j] : vbar; };

    if (mu >= vbar) {
        // only the point mass at vbar is feasible: Delta <= sum v_l x_l - alpha vbar
        std::vector<double> c(lp.num_vars(), 0.0);
        c[D] = 1.0;
        for (std::size_t l = 0; l < n; ++l) c[xc(l)] = -v[l];
        lp.add_row(std::move(c), Sense::LE, -alpha * vbar);
    } else {
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t j = 0; j <= n; ++j) {
                std::vector<double> c(lp.num_vars(), 0.0);
                c[D] = 1.0;
                c[lam(i)] = vj(j) - mu;
                for (std::size_t l = 0; l < j; ++l) c[xc(l)] = -v[l];
                lp.add_row(std::move(c), Sense::LE, j >= i ? -alpha * vj(i) : 0.0);
            }
            std::vector<double> c(lp.num_vars(), 0.0);
            c[D] = 1.0;
            c[lam(i)] = -mu;
            lp.add_row(std::move(c), Sense::LE, 0.0);
        }
    }
    std::vector<double> c(lp.num_vars(), 0.0);
    for (std::size_t l = 0; l < n; ++l) c[xc(l)] = 1.0;
    lp.add_row(std::move(c), Sense::EQ, 1.0);
    return lp;
}

std::pair<double, Mechanism> solve_alpha_metric_given_prices(double mu, double vbar, const std::vector<double>& prices,
                                                             double alpha) {
    const LinearProgram lp = build_alpha_metric_lp(mu, vbar, prices, alpha);
    const LpSolution sol = solve_lp(lp);
    if (!sol.optimal()) fail(sol.status);
    const std::vector<double> v = unique_sorted(prices);
    const std::size_t n = v.size();
    std::vector<double> x(sol.x.begin() + static_cast<long>(n + 2), sol.x.end());
    return {sol.x[0], mechanism_from(v, std::move(x), vbar)};
}

LinearProgram build_maximin_revenue_lp(double mu, double vbar, const std::vector<double>& prices) {
    if (!(mu > 0.0) || mu > vbar) throw DomainError("mean must lie in (0, vbar]");
    check_prices(prices, vbar);
    const std::vector<double> v = unique_sorted(prices);
    const std::size_t n = v.size();
    LinearProgram lp(2 + n);
    lp.objective[0] = 1.0;
    lp.bounds[0] = VarBound::Free;
    if (mu >= vbar) {
        std::vector<double> c(lp.num_vars(), 0.0);
        c[0] = 1.0;
        for (std::size_t l = 0; l < n; ++l) c[2 + l] = -v[l];
        lp.add_row(std::move(c), Sense::LE, 0.0);
    } else {
        for (std::size_t j = 0; j <= n; ++j) {
            std::vector<double> c(lp.num_vars(), 0.0);
            c[0] = 1.0;
            c[1] = (j < n ? v[j] : vbar) - mu;
            for (std::size_t l = 0; l < j; ++l) c[2 + l] = -v[l];
            lp.add_row(std::move(c), Sense::LE, 0.0);
        }
    }
    std::vector<double> c(lp.num_vars(), 0.0);
    for (std::size_t l = 0; l < n; ++l) c[2 + l] = 1.0;
    lp.add_row(std::move(c), Sense::EQ, 1.0);
    return lp;
}

std::pair<double, Mechanism> solve_maximin_revenue_given_prices(double mu, double vbar,
                                                                const std::vector<double>& prices) {
    const LinearProgram lp = build_maximin_revenue_lp(mu, vbar, prices);
    const LpSolution sol = solve_lp(lp);
    if (!sol.optimal()) fail(sol.status);
    const std::vector<double> v = unique_sorted(prices);
    std::vector<double> x(sol.x.begin() + 2, sol.x.end());
    return {sol.x[0], mechanism_from(v, std::move(x), vbar)};
}

}  // namespace rsm
