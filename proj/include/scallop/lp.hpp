#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "scallop/rational.hpp"

namespace scallop {

enum class LpStatus { optimal, infeasible, unbounded };

enum class Rel { eq, ge, le };

struct LpTerm {
    int var;
    Rat coeff;
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rat objective;
    std::vector<Rat> values;  // one entry per registered variable

    bool ok() const { return status == LpStatus::optimal; }
};

// Exact rational LP solved by two-phase primal simplex with Bland's
// smallest-index rule, so every solve terminates and identical inputs
// produce identical outputs. Problem sizes in this library are tiny; the
// dense tableau is the simple and fast-enough choice.
class LpProblem {
public:
    // Registers a variable; nonneg ? x >= 0 : x free.
    int add_var(bool nonneg = true) {
        vars_.push_back(nonneg);
        return static_cast<int>(vars_.size()) - 1;
    }

    void add_constraint(std::vector<LpTerm> terms, Rel rel, Rat rhs) {
        rows_.push_back({std::move(terms), rel, std::move(rhs)});
    }

    void minimize(std::vector<LpTerm> objective) {
        obj_ = std::move(objective);
        maximize_ = false;
    }

    void maximize(std::vector<LpTerm> objective) {
        obj_ = std::move(objective);
        maximize_ = true;
    }

    LpResult solve() const;

private:
    struct Row {
        std::vector<LpTerm> terms;
        Rel rel;
        Rat rhs;
    };

    std::vector<bool> vars_;
    std::vector<Row> rows_;
    std::vector<LpTerm> obj_;
    bool maximize_ = false;
};

namespace detail {

class SimplexTableau {
public:
    // mat: m rows, each of width n2 + 1 (rhs last), rhs >= 0.
    SimplexTableau(std::vector<std::vector<Rat>> mat, int n2) : a_(std::move(mat)), n_(n2) {}

    // Returns false on infeasibility.
    bool phase1() {
        const int m = static_cast<int>(a_.size());
        const int art0 = n_;
        for (int i = 0; i < m; ++i) {
            a_[i].insert(a_[i].end() - 1, static_cast<std::size_t>(m), Rat(0));
            a_[i][static_cast<std::size_t>(art0 + i)] = 1;
            basis_.push_back(art0 + i);
        }
        width_ = n_ + m;
        // cost row for the sum of artificials, priced out against the basis
        z_.assign(width_ + 1, Rat(0));
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < m; ++i) z_[j] -= a_[i][j];
        for (int i = 0; i < m; ++i) z_[width_] -= a_[i][width_];
        run();
        if (-z_[width_] != 0) return false;
        drop_artificials(art0);
        return true;
    }

    // Minimizes cost (over the original n columns); call after phase1.
    LpStatus phase2(const std::vector<Rat>& cost) {
        z_.assign(width_ + 1, Rat(0));
        for (int j = 0; j < n_; ++j) z_[j] = cost[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rat& cb = cost[static_cast<std::size_t>(basis_[i])];
            if (cb == 0) continue;
            for (int j = 0; j <= width_; ++j) z_[j] -= cb * a_[i][j];
        }
        return run();
    }

    Rat objective() const { return -z_[static_cast<std::size_t>(width_)]; }

    std::vector<Rat> solution() const {
        std::vector<Rat> x(static_cast<std::size_t>(n_), Rat(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < n_) x[static_cast<std::size_t>(basis_[i])] = a_[i][width_];
        return x;
    }

private:
    LpStatus run() {
        const int m = static_cast<int>(a_.size());
        for (;;) {
            int enter = -1;
            for (int j = 0; j < width_; ++j)
                if (z_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return LpStatus::optimal;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m; ++i) {
                if (a_[i][enter] <= 0) continue;
                Rat ratio = a_[i][width_] / a_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return LpStatus::unbounded;
            pivot(leave, enter);
        }
    }

    void pivot(int r, int c) {
        auto& row = a_[static_cast<std::size_t>(r)];
        Rat inv = row[static_cast<std::size_t>(c)];
        for (int j = 0; j <= width_; ++j) row[j] /= inv;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            Rat f = a_[i][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j <= width_; ++j) a_[i][j] -= f * row[j];
        }
        Rat zf = z_[static_cast<std::size_t>(c)];
        if (zf != 0)
            for (int j = 0; j <= width_; ++j) z_[j] -= zf * row[j];
        basis_[static_cast<std::size_t>(r)] = c;
    }

    // After a feasible phase 1, pivot zero-valued artificials out of the
    // basis and erase the artificial columns (redundant rows are dropped).
    void drop_artificials(int art0) {
        for (std::size_t i = 0; i < a_.size();) {
            if (basis_[i] < art0) {
                ++i;
                continue;
            }
            int c = -1;
            for (int j = 0; j < art0; ++j)
                if (a_[i][static_cast<std::size_t>(j)] != 0) {
                    c = j;
                    break;
                }
            if (c >= 0) {
                pivot(static_cast<int>(i), c);
                ++i;
            } else {
                a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        for (auto& row : a_) row.erase(row.begin() + n_, row.begin() + width_);
        width_ = n_;
    }

    std::vector<std::vector<Rat>> a_;
    std::vector<int> basis_;
    std::vector<Rat> z_;
    int n_;
    int width_ = 0;
};

}  // namespace detail

inline LpResult LpProblem::solve() const {
    // standard-form layout: nonneg var -> one column, free var -> two
    const int nvars = static_cast<int>(vars_.size());
    std::vector<int> col_of(static_cast<std::size_t>(nvars));
    int n2 = 0;
    for (int v = 0; v < nvars; ++v) {
        col_of[static_cast<std::size_t>(v)] = n2;
        n2 += vars_[static_cast<std::size_t>(v)] ? 1 : 2;
    }
    int nslack = 0;
    for (const auto& r : rows_)
        if (r.rel != Rel::eq) ++nslack;
    const int total = n2 + nslack;

    std::vector<std::vector<Rat>> mat;
    mat.reserve(rows_.size());
    int slack_at = n2;
    for (const auto& r : rows_) {
        std::vector<Rat> row(static_cast<std::size_t>(total) + 1, Rat(0));
        for (const auto& t : r.terms) {
            if (t.var < 0 || t.var >= nvars) throw invalid_input("lp term references unknown variable");
            int c = col_of[static_cast<std::size_t>(t.var)];
            row[static_cast<std::size_t>(c)] += t.coeff;
            if (!vars_[static_cast<std::size_t>(t.var)]) row[static_cast<std::size_t>(c) + 1] -= t.coeff;
        }
        row[static_cast<std::size_t>(total)] = r.rhs;
        if (r.rel == Rel::ge) row[static_cast<std::size_t>(slack_at++)] = -1;
        else if (r.rel == Rel::le) row[static_cast<std::size_t>(slack_at++)] = 1;
        if (row[static_cast<std::size_t>(total)] < 0)
            for (auto& e : row) e = -e;
        mat.push_back(std::move(row));
    }

    std::vector<Rat> cost(static_cast<std::size_t>(total), Rat(0));
    for (const auto& t : obj_) {
        int c = col_of[static_cast<std::size_t>(t.var)];
        Rat coeff = maximize_ ? Rat(-t.coeff) : t.coeff;
        cost[static_cast<std::size_t>(c)] += coeff;
        if (!vars_[static_cast<std::size_t>(t.var)]) cost[static_cast<std::size_t>(c) + 1] -= coeff;
    }

    detail::SimplexTableau tab(std::move(mat), total);
    LpResult out;
    if (!tab.phase1()) {
        out.status = LpStatus::infeasible;
        return out;
    }
    out.status = tab.phase2(cost);
    if (out.status != LpStatus::optimal) return out;

    std::vector<Rat> std_x = tab.solution();
    out.values.resize(static_cast<std::size_t>(nvars));
    for (int v = 0; v < nvars; ++v) {
        int c = col_of[static_cast<std::size_t>(v)];
        out.values[static_cast<std::size_t>(v)] =
            vars_[static_cast<std::size_t>(v)]
                ? std_x[static_cast<std::size_t>(c)]
                : std_x[static_cast<std::size_t>(c)] - std_x[static_cast<std::size_t>(c) + 1];
    }
    out.objective = maximize_ ? Rat(-tab.objective()) : tab.objective();
    return out;
}

}  // namespace scallop
