#pragma once

#include <string>
#include <vector>

namespace rsm {

enum class Sense { LE, EQ, GE };
enum class VarBound { NonNeg, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded, NumericFailure };

const char* status_name(LpStatus s);

struct LpRow {
    std::vector<double> coef;
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

// maximize objective . z subject to rows, bounds
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<VarBound> bounds;

    LinearProgram() = default;
    explicit LinearProgram(std::size_t nvars) : objective(nvars, 0.0), bounds(nvars, VarBound::NonNeg) {}

    std::size_t num_vars() const { return objective.size(); }
    void add_row(std::vector<double> coef, Sense sense, double rhs);
    void validate() const;  // throws std::invalid_argument
    std::string dump() const;
};

enum class PivotRule { Bland, Dantzig };

struct SolverOptions {
    PivotRule rule = PivotRule::Bland;
    double pivot_tol = 1e-9;
    double feas_tol = 1e-8;
    long max_pivots = 1000000;
    // Dantzig only: consecutive degenerate pivots before falling back to Bland
    int degenerate_limit = 50;
};

struct LpSolution {
    LpStatus status = LpStatus::NumericFailure;
    std::vector<double> x;
    double objective = 0.0;
    long pivots = 0;

    bool optimal() const { return status == LpStatus::Optimal; }
};

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& opts = {});

// max violation of lp's rows at x, scaled by 1 + |rhs|
double max_scaled_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace rsm
