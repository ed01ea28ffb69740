#include <cmath>

#include "doctest.h"
#include "rsm/closed_form.hpp"
#include "rsm/lp_builder.hpp"

using namespace rsm;

TEST_SUITE("lp_builder") {

TEST_CASE("support ratio LP on two prices") {
    auto [lp, layout] = build_ratio_lp(make_support(1, 100), {1, 10});
    CHECK(lp.num_vars() == layout.num_cols());
    const auto s = solve_lp(lp);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(1.0 / 19).epsilon(1e-12));

    const auto r = solve_ratio_given_prices(make_support(1, 100), {1, 10});
    CHECK(r.ratio == doctest::Approx(1.0 / 19).epsilon(1e-12));
    CHECK(r.mechanism.probs[0] == doctest::Approx(10.0 / 19).epsilon(1e-10));
    CHECK(r.mechanism.probs[1] == doctest::Approx(9.0 / 19).epsilon(1e-10));
}

TEST_CASE("quantile and degenerate mean examples") {
    auto r = solve_ratio_given_prices(make_quantile({0.5}, {0.25}, 1), {0.25, 0.5});
    CHECK(r.ratio == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(r.mechanism.probs[0] == doctest::Approx(0.5));
    r = solve_ratio_given_prices(make_mean(1, 1), {1});
    CHECK(r.ratio == doctest::Approx(1.0));
}

TEST_CASE("pricing at vbar alone earns nothing under a mean set") {
    const auto r = solve_ratio_given_prices(make_mean(0.5, 1), {1});
    CHECK(std::abs(r.ratio) < 1e-12);
}

TEST_CASE("row generation agrees with the dense LP") {
    const auto set = make_quantile({0.35, 0.7}, {0.6, 0.25}, 1);
    std::vector<double> prices;
    for (int k = 1; k <= 30; ++k) prices.push_back(k / 30.0);
    RatioSolveOptions dense, lazy;
    dense.dense_row_limit = 1u << 30;
    lazy.dense_row_limit = 0;
    RatioLpStats st;
    const auto a = solve_ratio_given_prices(set, prices, dense);
    const auto b = solve_ratio_given_prices(set, prices, lazy, &st);
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(1e-10));
    CHECK(st.rows_used < ratio_lp_layout(set, prices).num_rows());
}

TEST_CASE("alpha-metric LP examples") {
    const double v = (3 - std::sqrt(5.0)) / 2;
    auto [d1, m1] = solve_alpha_metric_given_prices(0.5, 1, {v}, 1.0);
    CHECK(d1 == doctest::Approx(-0.309016994).epsilon(1e-8));
    auto [d0, m0] = solve_alpha_metric_given_prices(0.5, 1, {1 - std::sqrt(0.5)}, 0.0);
    CHECK(d0 == doctest::Approx(std::pow(1 - std::sqrt(0.5), 2)).epsilon(1e-10));
    auto [dv, mv] = solve_alpha_metric_given_prices(1, 1, {1}, 0.0);
    CHECK(dv == doctest::Approx(1.0));
}

TEST_CASE("maximin revenue LP examples and agreement with alpha = 0") {
    auto [rev, m] = solve_maximin_revenue_given_prices(0.5, 1, {0.25, 0.5});
    CHECK(rev == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(m.probs[0] == doctest::Approx(0.5));
    auto [r1, m1] = solve_maximin_revenue_given_prices(0.5, 1, {1 - std::sqrt(0.5)});
    CHECK(r1 == doctest::Approx(0.085786438).epsilon(1e-8));
    auto [rv, mv] = solve_maximin_revenue_given_prices(1, 1, {1});
    CHECK(rv == doctest::Approx(1.0));
    for (double mu : {0.2, 0.5, 0.8})
        for (const std::vector<double>& p : {std::vector<double>{0.1, 0.4}, std::vector<double>{0.15, 0.3, 0.6}}) {
            const double a = solve_alpha_metric_given_prices(mu, 1, p, 0.0).first;
            const double b = solve_maximin_revenue_given_prices(mu, 1, p).first;
            CHECK(a == doctest::Approx(b).epsilon(1e-8));
        }
}

TEST_CASE("LP at closed-form prices reproduces the closed forms") {
    int checked = 0;
    for (double ratio : {1.5, 2.0, 5.0, 10.0, 30.0, 100.0})
        for (int n = 1; n <= 5; ++n) {
            const auto cf = support_optimal(n, 1, ratio);
            const auto lp = solve_ratio_given_prices(make_support(1, ratio), cf.mechanism.prices);
            CHECK(std::abs(lp.ratio - cf.ratio) <= 1e-7);
            ++checked;
        }
    for (int k = 1; k <= 24; ++k) {
        const double mu = k / 25.0;
        for (const auto& cf : {mean_one_level(mu, 1), mean_two_level(mu, 1)}) {
            const auto lp = solve_ratio_given_prices(make_mean(mu, 1), cf.mechanism.prices);
            CHECK(std::abs(lp.ratio - cf.ratio) <= 1e-7);
            ++checked;
        }
    }
    for (double w : {0.2, 0.5, 0.8})
        for (int k = 1; k <= 9; ++k) {
            const double xi = k / 10.0;
            for (const auto& cf : {quantile_one_level(w, xi, 1), quantile_two_level(w, xi, 1)}) {
                const auto lp = solve_ratio_given_prices(make_quantile({w}, {xi}, 1), cf.mechanism.prices);
                CHECK(std::abs(lp.ratio - cf.ratio) <= 1e-7);
                ++checked;
            }
        }
    CHECK(checked >= 60);
}

}
