#include "rsm/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rsm {

const char* status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "Optimal";
        case LpStatus::Infeasible: return "Infeasible";
        case LpStatus::Unbounded: return "Unbounded";
        case LpStatus::NumericFailure: return "NumericFailure";
    }
    return "?";
}

void LinearProgram::add_row(std::vector<double> coef, Sense sense, double rhs) {
    if (coef.size() != objective.size()) throw std::invalid_argument("row width differs from objective width");
    rows.push_back({std::move(coef), sense, rhs});
}

void LinearProgram::validate() const {
    if (bounds.size() != objective.size()) throw std::invalid_argument("bounds width differs from objective width");
    for (double c : objective)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective coefficient");
    for (const auto& r : rows) {
        if (r.coef.size() != objective.size()) throw std::invalid_argument("row width differs from objective width");
        if (!std::isfinite(r.rhs)) throw std::invalid_argument("non-finite rhs");
        for (double c : r.coef)
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
    }
}

std::string LinearProgram::dump() const {
    std::ostringstream os;
    os.precision(17);
    auto term_list = [&](const std::vector<double>& c) {
        bool any = false;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] == 0.0) continue;
            os << (any ? " " : "") << (c[j] < 0 ? "- " : (any ? "+ " : "")) << std::abs(c[j]) << " z" << j;
            any = true;
        }
        if (!any) os << "0";
    };
    os << "max ";
    term_list(objective);
    os << "\n";
    for (const auto& r : rows) {
        term_list(r.coef);
        os << (r.sense == Sense::LE ? " <= " : r.sense == Sense::GE ? " >= " : " = ") << r.rhs << "\n";
    }
    for (std::size_t j = 0; j < bounds.size(); ++j)
        if (bounds[j] == VarBound::Free) os << "free z" << j << "\n";
    return os.str();
}

double max_scaled_violation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& r : lp.rows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += r.coef[j] * x[j];
        double v = 0.0;
        if (r.sense == Sense::LE) v = lhs - r.rhs;
        else if (r.sense == Sense::GE) v = r.rhs - lhs;
        else v = std::abs(lhs - r.rhs);
        worst = std::max(worst, v / (1.0 + std::abs(r.rhs)));
    }
    for (std::size_t j = 0; j < x.size(); ++j)
        if (lp.bounds[j] == VarBound::NonNeg) worst = std::max(worst, -x[j]);
    return worst;
}

namespace {

class Tableau {
public:
    Tableau(const LinearProgram& lp, const SolverOptions& opts) : opts_(opts) {
        const std::size_t n = lp.num_vars();
        for (std::size_t j = 0; j < n; ++j) {
            plus_.push_back(ncols_++);
            minus_.push_back(lp.bounds[j] == VarBound::Free ? ncols_++ : npos);
        }
        nstruct_ = ncols_;
        m_ = lp.rows.size();
        // normalized senses after making rhs >= 0
        std::vector<Sense> sense(m_);
        std::vector<double> sign(m_, 1.0);
        std::size_t nslack = 0, nart = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            Sense s = lp.rows[i].sense;
            if (lp.rows[i].rhs < 0.0) {
                sign[i] = -1.0;
                s = s == Sense::LE ? Sense::GE : s == Sense::GE ? Sense::LE : Sense::EQ;
            }
            sense[i] = s;
            if (s != Sense::EQ) ++nslack;
            if (s != Sense::LE) ++nart;
        }
        first_art_ = nstruct_ + nslack;
        ncols_ = first_art_ + nart;
        W_ = ncols_ + 1;
        T_.assign(m_ * W_, 0.0);
        basis_.assign(m_, 0);
        std::size_t slack = nstruct_, art = first_art_;
        for (std::size_t i = 0; i < m_; ++i) {
            double* row = &T_[i * W_];
            const auto& r = lp.rows[i];
            for (std::size_t j = 0; j < n; ++j) {
                const double a = sign[i] * r.coef[j];
                row[plus_[j]] = a;
                if (minus_[j] != npos) row[minus_[j]] = -a;
            }
            row[ncols_] = sign[i] * r.rhs;
            if (sense[i] == Sense::LE) {
                row[slack] = 1.0;
                basis_[i] = slack++;
            } else {
                if (sense[i] == Sense::GE) row[slack++] = -1.0;
                row[art] = 1.0;
                basis_[i] = art++;
            }
        }
        cost_.assign(ncols_, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            cost_[plus_[j]] = lp.objective[j];
            if (minus_[j] != npos) cost_[minus_[j]] = -lp.objective[j];
        }
        blocked_.assign(ncols_, 0);
    }

    LpSolution run(const LinearProgram& lp) {
        LpSolution sol;
        if (first_art_ < ncols_) {
            std::vector<double> c1(ncols_, 0.0);
            for (std::size_t j = first_art_; j < ncols_; ++j) c1[j] = -1.0;
            price_from(c1);
            const LpStatus s1 = iterate();
            sol.pivots = pivots_;
            if (s1 == LpStatus::NumericFailure) {
                sol.status = s1;
                return sol;
            }
            double bmax = 0.0;
            for (std::size_t i = 0; i < m_; ++i) bmax = std::max(bmax, T_[i * W_ + ncols_]);
            if (-objective() > opts_.feas_tol * (1.0 + bmax)) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            drive_out_artificials();
            for (std::size_t j = first_art_; j < ncols_; ++j) blocked_[j] = 1;
        }
        price_from(cost_);
        const LpStatus s2 = iterate();
        sol.pivots = pivots_;
        sol.status = s2;
        if (s2 != LpStatus::Optimal) return sol;

        std::vector<double> val(ncols_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) val[basis_[i]] = T_[i * W_ + ncols_];
        sol.x.assign(lp.num_vars(), 0.0);
        for (std::size_t j = 0; j < lp.num_vars(); ++j) {
            double v = val[plus_[j]];
            if (minus_[j] != npos) v -= val[minus_[j]];
            else if (v < 0.0 && v > -opts_.feas_tol) v = 0.0;
            sol.x[j] = v;
        }
        sol.objective = 0.0;
        for (std::size_t j = 0; j < lp.num_vars(); ++j) sol.objective += lp.objective[j] * sol.x[j];
        if (max_scaled_violation(lp, sol.x) > opts_.feas_tol) sol.status = LpStatus::NumericFailure;
        return sol;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    double objective() const { return -obj_[ncols_]; }

    void price_from(const std::vector<double>& c) {
        obj_.assign(W_, 0.0);
        for (std::size_t j = 0; j < ncols_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = c[basis_[i]];
            if (cb == 0.0) continue;
            const double* row = &T_[i * W_];
            for (std::size_t j = 0; j < W_; ++j) obj_[j] -= cb * row[j];
        }
        for (std::size_t i = 0; i < m_; ++i) obj_[basis_[i]] = 0.0;
    }

    void pivot(std::size_t r, std::size_t c) {
        double* prow = &T_[r * W_];
        const double inv = 1.0 / prow[c];
        for (std::size_t j = 0; j < W_; ++j) prow[j] *= inv;
        prow[c] = 1.0;
        nz_idx_.clear();
        nz_val_.clear();
        for (std::size_t j = 0; j < W_; ++j)
            if (prow[j] != 0.0) {
                nz_idx_.push_back(j);
                nz_val_.push_back(prow[j]);
            }
        const std::size_t nnz = nz_idx_.size();
        const bool sparse = 2 * nnz < W_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* row = &T_[i * W_];
            const double f = row[c];
            if (f == 0.0) continue;
            if (sparse) {
                for (std::size_t q = 0; q < nnz; ++q) row[nz_idx_[q]] -= f * nz_val_[q];
            } else {
                for (std::size_t j = 0; j < W_; ++j) row[j] -= f * prow[j];
            }
            row[c] = 0.0;
        }
        const double f = obj_[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < W_; ++j) obj_[j] -= f * prow[j];
            obj_[c] = 0.0;
        }
        basis_[r] = c;
        ++pivots_;
    }

    std::size_t choose_entering(bool bland) const {
        const double tol = opts_.pivot_tol;
        if (bland) {
            for (std::size_t j = 0; j < ncols_; ++j)
                if (!blocked_[j] && obj_[j] > tol) return j;
            return npos;
        }
        std::size_t best = npos;
        double bestv = tol;
        for (std::size_t j = 0; j < ncols_; ++j)
            if (!blocked_[j] && obj_[j] > bestv) {
                bestv = obj_[j];
                best = j;
            }
        return best;
    }

    std::size_t choose_leaving(std::size_t c) const {
        std::size_t best = npos;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m_; ++i) {
            const double a = T_[i * W_ + c];
            if (a <= opts_.pivot_tol) continue;
            const double ratio = std::max(T_[i * W_ + ncols_], 0.0) / a;
            if (best == npos || ratio < best_ratio - 1e-12 * (1.0 + best_ratio) ||
                (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio) && basis_[i] < basis_[best])) {
                if (ratio < best_ratio) best_ratio = ratio;
                best = i;
            }
        }
        return best;
    }

    LpStatus iterate() {
        bool bland = opts_.rule == PivotRule::Bland;
        int degenerate_run = 0;
        for (;;) {
            if (pivots_ >= opts_.max_pivots) return LpStatus::NumericFailure;
            const std::size_t c = choose_entering(bland);
            if (c == npos) return LpStatus::Optimal;
            const std::size_t r = choose_leaving(c);
            if (r == npos) return LpStatus::Unbounded;
            const bool degenerate = T_[r * W_ + ncols_] <= opts_.pivot_tol;
            pivot(r, c);
            if (opts_.rule == PivotRule::Dantzig) {
                if (degenerate) {
                    if (++degenerate_run > opts_.degenerate_limit) bland = true;
                } else {
                    degenerate_run = 0;
                    bland = false;
                }
            }
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < first_art_) continue;
            const double* row = &T_[i * W_];
            std::size_t best = npos;
            double bestv = opts_.pivot_tol;
            for (std::size_t j = 0; j < first_art_; ++j)
                if (std::abs(row[j]) > bestv) {
                    bestv = std::abs(row[j]);
                    best = j;
                }
            if (best != npos) pivot(i, best);
            // otherwise the row is redundant; its artificial stays basic at zero
        }
    }

    const SolverOptions& opts_;
    std::size_t m_ = 0, ncols_ = 0, nstruct_ = 0, first_art_ = 0, W_ = 0;
    std::vector<std::size_t> plus_, minus_, basis_;
    std::vector<double> T_, obj_, cost_, nz_val_;
    std::vector<std::size_t> nz_idx_;
    std::vector<char> blocked_;
    long pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SolverOptions& opts) {
    lp.validate();
    Tableau t(lp, opts);
    return t.run(lp);
}

}  // namespace rsm
