#pragma once

#include <cstddef>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/rational.hpp"

namespace rainbow::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    std::vector<Rational> x;
    Rational objective;
};

namespace detail {

// Dense tableau. Column `rhs_col` holds the right-hand side; `cost` is the
// reduced-cost row (maximization: a positive entry may enter).
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows, std::vector<Rational>(cols + 1)), cost_(cols + 1), basis_(rows), cols_(cols) {}

    Rational& at(std::size_t r, std::size_t c) { return rows_[r][c]; }
    Rational& rhs(std::size_t r) { return rows_[r][cols_]; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    void set_objective(const std::vector<Rational>& c) {
        for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
        cost_[cols_] = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& cb = c[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * rows_[r][j];
        }
    }

    Rational objective_value() const { return -cost_[cols_]; }

    void pivot(std::size_t r, std::size_t c) {
        auto& prow = rows_[r];
        const Rational p = prow[c];
        for (auto& v : prow)
            if (sgn(v) != 0) v /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || sgn(rows_[i][c]) == 0) continue;
            const Rational f = rows_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (sgn(prow[j]) != 0) rows_[i][j] -= f * prow[j];
        }
        if (sgn(cost_[c]) != 0) {
            const Rational f = cost_[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (sgn(prow[j]) != 0) cost_[j] -= f * prow[j];
        }
        basis_[r] = c;
    }

    // Bland's rule; returns false if unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        while (true) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (allowed[j] && sgn(cost_[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == cols_) return true;
            std::size_t leave = rows_.size();
            Rational best;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (sgn(rows_[r][enter]) <= 0) continue;
                Rational ratio = rows_[r][cols_] / rows_[r][enter];
                if (leave == rows_.size() || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == rows_.size()) return false;
            pivot(leave, enter);
        }
    }

    void drop_row(std::size_t r) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    }

private:
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> cost_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
};

}  // namespace detail

/// Exact two-phase simplex: maximize c.x subject to A x <= b, x free.
inline Result maximize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                       const std::vector<Rational>& c) {
    const std::size_t n = c.size(), m = A.size();
    if (b.size() != m) throw InputError("lp: row count mismatch");
    for (const auto& row : A)
        if (row.size() != n) throw InputError("lp: column count mismatch");

    std::size_t n_art = 0;
    for (const Rational& bi : b)
        if (sgn(bi) < 0) ++n_art;
    const std::size_t slack0 = 2 * n, art0 = 2 * n + m, cols = 2 * n + m + n_art;

    detail::Tableau t(m, cols);
    std::size_t next_art = art0;
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < n; ++j) {
            t.at(i, j) = flip ? Rational(-A[i][j]) : A[i][j];
            t.at(i, n + j) = -t.at(i, j);
        }
        t.at(i, slack0 + i) = flip ? -1 : 1;
        t.rhs(i) = flip ? Rational(-b[i]) : b[i];
        if (flip) {
            t.at(i, next_art) = 1;
            t.basis()[i] = next_art++;
        } else {
            t.basis()[i] = slack0 + i;
        }
    }

    std::vector<bool> allowed(cols, true);
    if (n_art > 0) {
        std::vector<Rational> phase1(cols);
        for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
        t.set_objective(phase1);
        t.optimize(allowed);
        if (sgn(t.objective_value()) < 0) return {Status::Infeasible, {}, 0};
        for (std::size_t r = 0; r < t.rows();) {
            if (t.basis()[r] < art0) {
                ++r;
                continue;
            }
            std::size_t col = art0;
            for (std::size_t j = 0; j < art0; ++j)
                if (sgn(t.at(r, j)) != 0) {
                    col = j;
                    break;
                }
            if (col == art0) {
                t.drop_row(r);
            } else {
                t.pivot(r, col);
                ++r;
            }
        }
        for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
    }

    std::vector<Rational> cost(cols);
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    t.set_objective(cost);
    if (!t.optimize(allowed)) return {Status::Unbounded, {}, 0};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const std::size_t bv = t.basis()[r];
        if (bv < n)
            res.x[bv] += t.rhs(r);
        else if (bv < 2 * n)
            res.x[bv - n] -= t.rhs(r);
    }
    res.objective = 0;
    for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace rainbow::lp
