#include <random>

#include "doctest.h"
#include "rsm/lp_solver.hpp"

using namespace rsm;

TEST_SUITE("lp_solver") {

TEST_CASE("trivial bounded and infeasible programs") {
    LinearProgram lp(1);
    lp.objective = {1};
    lp.add_row({1}, Sense::LE, 1);
    auto s = solve_lp(lp);
    REQUIRE(s.optimal());
    CHECK(s.x[0] == doctest::Approx(1));
    CHECK(s.objective == doctest::Approx(1));

    LinearProgram bad(1);
    bad.objective = {1};
    bad.add_row({1}, Sense::LE, -1);
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded and free variables") {
    LinearProgram lp(2);
    lp.objective = {1, 0};
    lp.add_row({-1, 1}, Sense::LE, 1);
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);

    LinearProgram f(1);
    f.bounds = {VarBound::Free};
    f.objective = {-1};
    f.add_row({1}, Sense::GE, -3);
    const auto s = solve_lp(f);
    REQUIRE(s.optimal());
    CHECK(s.x[0] == doctest::Approx(-3));
}

TEST_CASE("equality rows and negative right-hand sides") {
    LinearProgram lp(3);
    lp.objective = {1, 2, -1};
    lp.add_row({1, 1, 1}, Sense::EQ, 1);
    lp.add_row({-1, 0, 0}, Sense::LE, -0.25);
    lp.add_row({0, 1, 0}, Sense::LE, 0.5);
    const auto s = solve_lp(lp);
    REQUIRE(s.optimal());
    CHECK(s.objective == doctest::Approx(1.5));
    CHECK(max_scaled_violation(lp, s.x) < 1e-9);
}

// max c.x, A x <= b, x >= 0 built around a known vertex: rows tight at x* carry the dual y* > 0.
TEST_CASE("random programs with a planted optimum, checked against the dual") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.1, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 19, m = n + 3;
        std::vector<double> xs(n);
        for (auto& v : xs) v = trial % 3 == 0 ? 0.0 : pos(rng);
        std::vector<std::vector<double>> A(m, std::vector<double>(n));
        std::vector<double> b(m), y(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (auto& a : A[i]) a = u(rng);
            double ax = 0;
            for (std::size_t j = 0; j < n; ++j) ax += A[i][j] * xs[j];
            const bool tight = i < n;
            b[i] = ax + (tight ? 0.0 : pos(rng));
            if (tight) y[i] = pos(rng);
        }
        // c = A^T y - s with s >= 0 on coordinates where x* = 0
        std::vector<double> c(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < m; ++i) c[j] += A[i][j] * y[i];
            if (xs[j] == 0.0) c[j] -= pos(rng);
        }
        LinearProgram lp(n);
        lp.objective = c;
        for (std::size_t i = 0; i < m; ++i) lp.add_row(A[i], Sense::LE, b[i]);
        double planted = 0, dual = 0;
        for (std::size_t j = 0; j < n; ++j) planted += c[j] * xs[j];
        for (std::size_t i = 0; i < m; ++i) dual += b[i] * y[i];
        CHECK(planted == doctest::Approx(dual).epsilon(1e-10));

        for (auto rule : {PivotRule::Bland, PivotRule::Dantzig}) {
            SolverOptions o;
            o.rule = rule;
            const auto s = solve_lp(lp, o);
            REQUIRE(s.optimal());
            CHECK(std::abs(s.objective - planted) <= 1e-7 * (1 + std::abs(planted)));
            CHECK(max_scaled_violation(lp, s.x) < 1e-8);
        }

        // hand-built dual: min b.y, A^T y >= c, y >= 0
        LinearProgram d(m);
        for (std::size_t i = 0; i < m; ++i) d.objective[i] = -b[i];
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = A[i][j];
            d.add_row(col, Sense::GE, c[j]);
        }
        const auto ds = solve_lp(d);
        REQUIRE(ds.optimal());
        CHECK(std::abs(-ds.objective - planted) <= 1e-6 * (1 + std::abs(planted)));
    }
}

TEST_CASE("degenerate program terminates under Bland") {
    // classic cycling example for the largest-coefficient rule
    LinearProgram lp(4);
    lp.objective = {0.75, -20, 0.5, -6};
    lp.add_row({0.25, -8, -1, 9}, Sense::LE, 0);
    lp.add_row({0.5, -12, -0.5, 3}, Sense::LE, 0);
    lp.add_row({0, 0, 1, 0}, Sense::LE, 1);
    for (auto rule : {PivotRule::Bland, PivotRule::Dantzig}) {
        SolverOptions o;
        o.rule = rule;
        const auto s = solve_lp(lp, o);
        REQUIRE(s.optimal());
        CHECK(s.objective == doctest::Approx(1.25));
    }
}

TEST_CASE("malformed programs are rejected") {
    LinearProgram lp(2);
    lp.rows.push_back({{1.0}, Sense::LE, 1.0});
    CHECK_THROWS(lp.validate());
}

}
