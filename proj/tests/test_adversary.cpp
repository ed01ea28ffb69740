#include <cmath>

#include "doctest.h"
#include "rsm/adversary.hpp"
#include "rsm/closed_form.hpp"
#include "rsm/lp_builder.hpp"

using namespace rsm;

TEST_SUITE("adversary") {

TEST_CASE("support optimum is tight at the breakpoints") {
    const auto set = make_support(1, 100);
    const auto m = support_optimal(2, 1, 100).mechanism;
    const auto c = worst_case_ratio(m, set);
    CHECK(c.ratio == doctest::Approx(1.0 / 19).epsilon(1e-8));
    const bool tie = c.price == left_of(10) || c.price == exact(100);
    CHECK(tie);
    CHECK(certificate_consistent(step_payment(m), c, set));
}

TEST_CASE("deterministic price under a mean set") {
    const auto set = make_mean(0.5, 1);
    const auto m = deterministic(0.3, 1);
    const auto c = worst_case_ratio(m, set);
    CHECK(c.ratio == doctest::Approx(2.0 / 7).epsilon(1e-12));
    REQUIRE(c.distribution.atoms.size() == 2);
    CHECK(c.distribution.atoms[0].at == left_of(0.3));
    CHECK(c.distribution.atoms[1].at.value == 1.0);
    CHECK(certificate_consistent(step_payment(m), c, set));
}

TEST_CASE("the two-option menu against the conversion-rate information") {
    const auto set = make_quantile({40}, {0.6}, 100);
    const auto m = canonicalize({40, 100}, {5.0 / 6, 1.0 / 6}, 100);
    const auto c = worst_case_ratio(m, set);
    CHECK(c.ratio <= 25.0 / 28 + 1e-12);
    CHECK(c.ratio == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(certificate_consistent(step_payment(m), c, set));
}

TEST_CASE("point-mass set returns the expected price over vbar") {
    const auto m = canonicalize({0.2, 0.6}, {0.5, 0.5}, 1);
    const auto c = worst_case_ratio(m, make_support(1, 1));
    CHECK(c.ratio == doctest::Approx(0.4).epsilon(1e-12));
    REQUIRE(c.distribution.atoms.size() == 1);
    CHECK(c.distribution.atoms[0].at == exact(1));
}

TEST_CASE("alpha metric certificates") {
    auto c = worst_case_alpha_metric(deterministic(1 - std::sqrt(0.5), 1), 0.5, 1, 0.0);
    CHECK(c.ratio == doctest::Approx(0.085786438).epsilon(1e-8));
    c = worst_case_alpha_metric(deterministic((3 - std::sqrt(5.0)) / 2, 1), 0.5, 1, 1.0);
    CHECK(c.ratio == doctest::Approx(-0.309016994).epsilon(1e-8));
    c = worst_case_alpha_metric(deterministic(1, 1), 1, 1, 0.0);
    CHECK(c.ratio == doctest::Approx(1.0));
}

TEST_CASE("mean-variance adversary") {
    auto c = worst_case_meanvar(deterministic(1, 1), 1, 0, 0, 200);
    CHECK(c.ratio == doctest::Approx(1.0));
    const auto mv = meanvar_two_level_approx(1, 1);
    c = worst_case_meanvar(mv.mechanism, 1, 1);
    CHECK(c.ratio >= 0.2582 - 1e-4);
    CHECK(c.ratio <= 0.2582 + 5e-3);
    CHECK(c.warnings.empty());
    const auto half = meanvar_two_level_approx(1, 0.5);
    CHECK(worst_case_meanvar(half.mechanism, 1, 0.5).ratio >= 0.4393 - 1e-4);
}

TEST_CASE("mean-variance refinement never raises the ratio") {
    const auto mv = meanvar_two_level_approx(1, 2);
    double prev = 2.0;
    for (std::size_t g : {250u, 500u, 1000u, 2000u}) {
        const double r = worst_case_meanvar(mv.mechanism, 1, 2, 0, g).ratio;
        CHECK(r <= prev + 1e-9);
        prev = r;
    }
}

TEST_CASE("soundness triangle and dense fill") {
    const std::vector<std::pair<AmbiguitySet, std::vector<double>>> cases = {
        {make_support(0.1, 1), {0.1, 0.3, 0.6}},
        {make_mean(0.3, 1), {0.1, 0.25, 0.5}},
        {make_mean(0.7, 1), {0.4, 0.8}},
        {make_quantile({0.5}, {0.4}, 1), {0.2, 0.5, 0.9}},
        {make_quantile({0.3, 0.7}, {0.6, 0.3}, 1), {0.15, 0.3, 0.45, 0.7}},
        {make_multisegment({{0.2, 0.5}, {0.4, 0.9}}, {0.4, 0.5}, 1), {0.2, 0.45, 0.7}},
        {make_segmentedmean({{0.0, 0.6}, {0.3, 1.0}}, {0.2, 0.4}, 1), {0.15, 0.35, 0.6}},
    };
    for (const auto& [set, prices] : cases) {
        const auto r = solve_ratio_given_prices(set, prices);
        const auto c = worst_case_ratio(r.mechanism, set);
        CHECK(std::abs(c.ratio - r.ratio) <= 1e-7);
        CHECK(certificate_consistent(step_payment(r.mechanism), c, set));
        AdversaryOptions dense;
        dense.dense_fill = 500;
        const auto cd = worst_case_ratio(r.mechanism, set, dense);
        CHECK(cd.ratio >= c.ratio - 1e-7);
        CHECK(certificate_consistent(step_payment(r.mechanism), cd, set));
    }
}

TEST_CASE("infinite-level quantile mechanism under a dense adversary") {
    const auto set = make_quantile({0.5}, {0.5}, 1);
    const auto m = quantile_inf(0.5, 0.5, 1);
    AdversaryOptions dense;
    dense.dense_fill = 2000;
    const auto c = worst_case_ratio(m, set, dense);
    CHECK(c.ratio >= m.r - 5e-3);
    CHECK(c.ratio <= m.r + 1e-7);
    const PaymentFn t = [&](GridPoint g) { return m.payment_at(g); };
    CHECK(certificate_consistent(t, c, set));
}

}
