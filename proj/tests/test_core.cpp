#include <random>

#include "doctest.h"
#include "rsm/core.hpp"

using namespace rsm;

TEST_SUITE("core") {

TEST_CASE("grid point order puts the left limit first") {
    CHECK(left_of(0.5) < exact(0.5));
    CHECK(exact(0.4) < left_of(0.5));
    CHECK(exact(0.5) < left_of(0.6));
    CHECK_THROWS_AS(left_of(0.0), DomainError);
    CHECK(parse_side("LeftLimit") == Side::LeftLimit);
    CHECK(parse_side(side_name(Side::Exact)) == Side::Exact);
}

TEST_CASE("step payment of the two-price menu") {
    const auto m = canonicalize({40, 100}, {5.0 / 6, 1.0 / 6}, 100);
    CHECK(payment_at(m, exact(40)) == doctest::Approx(100.0 / 3).epsilon(1e-14));
    CHECK(payment_at(m, exact(100)) == doctest::Approx(50).epsilon(1e-14));
    CHECK(payment_at(m, left_of(40)) == 0.0);
    CHECK(payment_at(m, left_of(100)) == doctest::Approx(100.0 / 3).epsilon(1e-14));
    CHECK_THROWS_AS(payment_at(m, exact(101)), DomainError);
}

TEST_CASE("canonicalize sorts, merges and is idempotent") {
    auto m = canonicalize({0.5, 0.5}, {0.3, 0.7}, 1);
    REQUIRE(m.levels() == 1);
    CHECK(m.probs[0] == doctest::Approx(1.0));

    m = canonicalize({100, 40}, {1.0 / 6, 5.0 / 6}, 100);
    CHECK(m.prices == std::vector<double>{40, 100});
    CHECK(m.probs[0] == doctest::Approx(5.0 / 6));

    m = canonicalize({0.2}, {1.0}, 1);
    CHECK(m.prices == std::vector<double>{0.2});

    const auto again = canonicalize(m.prices, m.probs, m.vbar);
    CHECK(again.prices == m.prices);
    CHECK(again.probs == m.probs);
}

TEST_CASE("canonicalize rejects bad input") {
    CHECK_THROWS_AS(canonicalize({0.2, 0.3}, {0.5}, 1), DomainError);
    CHECK_THROWS_AS(canonicalize({1.2}, {1.0}, 1), DomainError);
    CHECK_THROWS_AS(canonicalize({0.2}, {-0.1}, 1), DomainError);
    CHECK_THROWS_AS(canonicalize({0.2}, {0.5}, 1), DomainError);
    CHECK_THROWS_AS(canonicalize({}, {}, 1), DomainError);
}

TEST_CASE("payment is monotone along grid order and tops out at the expected price") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 6;
        std::vector<double> p(n), x(n);
        double s = 0;
        for (int i = 0; i < n; ++i) {
            p[i] = u(rng);
            x[i] = u(rng) + 1e-3;
            s += x[i];
        }
        for (auto& xi : x) xi /= s;
        const auto m = canonicalize(p, x, 1.0);
        std::vector<GridPoint> pts{exact(0.0)};
        for (int k = 1; k <= 500; ++k) {
            pts.push_back(left_of(k / 500.0));
            pts.push_back(exact(k / 500.0));
        }
        for (double v : m.prices) {
            pts.push_back(left_of(v));
            pts.push_back(exact(v));
        }
        std::sort(pts.begin(), pts.end());
        double prev = -1.0;
        for (const auto& g : pts) {
            const double t = payment_at(m, g);
            CHECK(t >= prev);
            prev = t;
        }
        double dot = 0;
        for (std::size_t i = 0; i < m.levels(); ++i) dot += m.prices[i] * m.probs[i];
        CHECK(payment_at(m, exact(1.0)) == dot);
    }
}

TEST_CASE("discrete distribution tail mass uses grid order") {
    DiscreteDistribution d{{{left_of(0.5), 0.25}, {exact(0.5), 0.25}, {exact(1.0), 0.5}}};
    CHECK(d.total_mass() == doctest::Approx(1.0));
    CHECK(d.tail_mass(left_of(0.5)) == doctest::Approx(1.0));
    CHECK(d.tail_mass(exact(0.5)) == doctest::Approx(0.75));
    CHECK(d.tail_mass(left_of(1.0)) == doctest::Approx(0.5));
}

}
