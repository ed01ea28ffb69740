#include <cmath>

#include "doctest.h"
#include "rsm/closed_form.hpp"
#include "rsm/eval.hpp"

using namespace rsm;

TEST_SUITE("closed_form") {

TEST_CASE("bisection") {
    const double r = bisect([](double x) { return x * x - 2; }, {0, 2});
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS(bisect([](double x) { return x * x + 1; }, {0, 2}));
}

TEST_CASE("support family") {
    auto r = support_levels_ratio(1, 100, {1, 10});
    CHECK(r.ratio == doctest::Approx(1.0 / 19).epsilon(1e-14));
    CHECK(r.mechanism.probs[0] == doctest::Approx(10.0 / 19).epsilon(1e-14));
    CHECK(support_levels_ratio(1, 1, {1}).ratio == 1.0);
    CHECK(support_levels_ratio(1, 10, {2, 5}).ratio == 0.0);

    r = support_optimal(2, 1, 100);
    CHECK(r.mechanism.prices[0] == doctest::Approx(1));
    CHECK(r.mechanism.prices[1] == doctest::Approx(10));
    CHECK(support_optimal(1, 1, 1).ratio == 1.0);
    CHECK(support_limit_ratio(1, 100) == doctest::Approx(1 / (std::log(100.0) + 1)).epsilon(1e-14));
    CHECK(support_limit_ratio(1, 100) == doctest::Approx(0.1784067).epsilon(1e-6));

    double prev = 0;
    for (int n = 1; n <= 20; ++n) {
        const double rn = support_optimal(n, 1, 100).ratio;
        CHECK(rn > prev);
        prev = rn;
    }
    CHECK(std::abs(support_optimal(1000, 1, 100).ratio - support_limit_ratio(1, 100)) < 1e-2);
}

TEST_CASE("mean family") {
    auto r = mean_one_level(0.5, 1);
    CHECK(r.ratio == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-12));
    CHECK(r.mechanism.prices[0] == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-12));
    CHECK(mean_one_level(1, 1).ratio == 1.0);
    CHECK(mean_one_level(0.75, 1).ratio == doctest::Approx(0.5).epsilon(1e-12));

    r = mean_two_level(0.25, 1);
    CHECK(r.mechanism.prices[0] == doctest::Approx(0.133975).epsilon(1e-5));
    CHECK(r.mechanism.prices[1] == doctest::Approx(0.366025).epsilon(1e-5));
    CHECK(r.ratio == doctest::Approx(0.2240092).epsilon(1e-6));

    r = mean_two_level(0.64, 1);
    CHECK(r.mechanism.prices[0] == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(r.mechanism.prices[1] == doctest::Approx(0.558258).epsilon(1e-5));
    CHECK(r.ratio == doctest::Approx(0.4726242).epsilon(1e-6));

    r = mean_two_level(1, 1);
    CHECK(r.ratio == 1.0);
    CHECK(r.mechanism.levels() == 1);

    for (int k = 1; k <= 99; ++k) CHECK(mean_two_level(k / 100.0, 1).ratio >= mean_one_level(k / 100.0, 1).ratio - 1e-12);
}

TEST_CASE("second price moves monotonically within each branch") {
    std::vector<double> lo, hi;
    for (int k = 1; k <= 98; ++k) {
        const double mu = k / 100.0;
        if (std::abs(mu - 0.49) < 0.005) continue;
        const auto d = mean_two_level_detail(mu, 1);
        CHECK(d.low_branch == (mu <= 0.49));
        CHECK(d.v2_at_least_mu == (mu <= 0.49));
        CHECK((d.result.mechanism.prices.back() >= mu) == (mu <= 0.49));
        (mu <= 0.49 ? lo : hi).push_back(d.result.mechanism.prices.back());
    }
    for (std::size_t i = 1; i < lo.size(); ++i) CHECK(lo[i] >= lo[i - 1]);
    for (std::size_t i = 1; i < hi.size(); ++i) CHECK(hi[i] >= hi[i - 1]);
    CHECK_FALSE(mean_two_level_detail(0.49, 1).warning.empty());
    CHECK(mean_two_level_detail(0.3, 1).warning.empty());
}

TEST_CASE("mean-variance approximation") {
    CHECK(meanvar_two_level_approx(1, 1).ratio == doctest::Approx(0.2582).epsilon(1e-3));
    CHECK(meanvar_two_level_approx(1, 10).ratio == doctest::Approx(0.0253).epsilon(1e-2));
    const auto z = meanvar_two_level_approx(1, 0);
    CHECK(z.ratio == 1.0);
    CHECK(z.mechanism.prices[0] == 1.0);
    CHECK(meanvar_ratio_lower_bound(1, 0) == doctest::Approx(0.3273268).epsilon(1e-6));
    CHECK(meanvar_ratio_lower_bound(1, 1) == doctest::Approx(0.197386).epsilon(1e-5));
    CHECK(meanvar_ratio_lower_bound(1, 10) == doctest::Approx(0.024673).epsilon(1e-4));
    for (int k = 1; k <= 200; ++k) {
        const double cv = k / 10.0;
        CHECK(meanvar_two_level_approx(1, cv).ratio >= meanvar_ratio_lower_bound(1, cv));
    }
}

TEST_CASE("quantile finite levels") {
    CHECK(quantile_one_level(0.5, 0.3, 1).ratio == doctest::Approx(0.3));
    CHECK(quantile_one_level(1, 1, 1).ratio == 1.0);
    CHECK(quantile_one_level(0.2, 0.9, 1).ratio == doctest::Approx(0.2));

    auto r = quantile_two_level(0.5, 0.25, 1);
    CHECK(r.ratio == doctest::Approx(0.375));
    CHECK(r.mechanism.prices == std::vector<double>{0.25, 0.5});
    CHECK(quantile_two_level(0.4, 0.4, 1).ratio == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(quantile_two_level(0.9, 0.04, 1).ratio == doctest::Approx(0.12).epsilon(1e-12));

    for (double w : {0.2, 0.4, 0.6, 0.8})
        for (int k = 1; k <= 19; ++k) {
            const double xi = k / 20.0;
            const double r1 = quantile_one_level(w, xi, 1).ratio, r2 = quantile_two_level(w, xi, 1).ratio;
            if (std::abs(xi - w) < 1e-12) CHECK(std::abs(r2 - r1) <= 1e-12);
            else CHECK(r2 > r1);
        }
}

TEST_CASE("quantile infinite level") {
    auto m = quantile_inf(0.5, 0.5, 1);
    CHECK(m.phat == doctest::Approx(0.75));
    CHECK(m.r == doctest::Approx(0.536755).epsilon(1e-5));
    CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    m = quantile_inf(0.8, 0.5, 1);
    CHECK(m.phat == 1.0);
    CHECK(m.r == doctest::Approx(0.694440944).epsilon(1e-8));
    CHECK_THROWS_AS(quantile_inf(0.0, 0.5, 1), DomainError);
    CHECK_THROWS_AS(quantile_inf(0.5, 0.0, 1), DomainError);

    for (double w : {0.2, 0.5, 0.8})
        for (int k = 1; k <= 19; ++k) {
            const auto q = quantile_inf(w, k / 20.0, 1);
            CHECK(std::abs(q.total_mass() - 1) < 1e-9);
            CHECK(q.r >= quantile_two_level(w, k / 20.0, 1).ratio - 1e-9);
            double pa = 0, pt = 0;
            for (int i = 0; i <= 1000; ++i) {
                const double v = i / 1000.0;
                CHECK(q.allocation(v) >= pa - 1e-12);
                CHECK(q.payment(v) >= pt - 1e-12);
                pa = q.allocation(v);
                pt = q.payment(v);
            }
        }
}

// a higher conversion rate shifts the price distribution up: q is pointwise lower
TEST_CASE("higher quantile mass dominates the price distribution") {
    const double pairs[][2] = {{0.4, 0.6}, {0.1, 0.9}, {0.2, 0.3}, {0.3, 0.5}, {0.5, 0.7},
                               {0.6, 0.8}, {0.05, 0.95}, {0.25, 0.75}, {0.45, 0.55}, {0.7, 0.9}};
    for (double w : {0.3, 0.5, 0.8})
        for (const auto& p : pairs) {
            const auto a = quantile_inf(w, p[0], 1), b = quantile_inf(w, p[1], 1);
            for (int i = 0; i <= 1000; ++i) CHECK(b.allocation(i / 1000.0) <= a.allocation(i / 1000.0) + 1e-12);
        }
}

TEST_CASE("maximin revenue and regret") {
    auto m = maximin_revenue_optimal(0.5, 1, 1);
    CHECK(m.v1 == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-10));
    CHECK(m.revenue == doctest::Approx(std::pow(1 - std::sqrt(0.5), 2)).epsilon(1e-10));
    m = maximin_revenue_optimal(0.5, 1, 2);
    CHECK(m.v1 == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.mechanism.prices.back() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.revenue == doctest::Approx(0.125).epsilon(1e-12));
    m = maximin_revenue_optimal(1, 1, 3);
    CHECK(m.v1 == doctest::Approx(1.0));
    CHECK(m.revenue == doctest::Approx(1.0));

    auto g = minimax_regret_one_level(0.5, 1);
    CHECK(g.price == doctest::Approx(0.381966).epsilon(1e-6));
    CHECK(g.regret == doctest::Approx(0.309017).epsilon(1e-6));
    g = minimax_regret_one_level(1, 1);
    CHECK(g.price == 1.0);
    CHECK(g.regret == doctest::Approx(0.0));
    g = minimax_regret_one_level(0.75, 1);
    CHECK(g.price == doctest::Approx(0.5657415).epsilon(1e-6));
    CHECK(g.regret == doctest::Approx(0.3256939).epsilon(1e-6));
}

}
