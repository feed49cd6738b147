#include "finadd/simplex.hpp"

#include "finadd/errors.hpp"

#include <cstddef>
#include <limits>
#include <optional>

namespace finadd {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class Tableau {
public:
    Tableau(const LinearProgram& lp) : rows_(lp.rows.size()), structural_(lp.cost.size()) {
        if (lp.rhs.size() != rows_) throw DomainError("LP rhs length does not match row count");
        for (const auto& r : lp.rows)
            if (r.size() != structural_) throw DomainError("LP row length does not match cost length");

        // A column with a single nonzero entry (a slack) can start in the
        // basis of its row; rows without one get an artificial column.
        std::vector<std::size_t> single_row(structural_, kNone);
        for (std::size_t j = 0; j < structural_; ++j) {
            std::size_t nonzero = 0, where = kNone;
            for (std::size_t i = 0; i < rows_; ++i)
                if (lp.rows[i][j] != 0) ++nonzero, where = i;
            if (nonzero == 1) single_row[j] = where;
        }
        std::vector<bool> flip(rows_);
        std::vector<std::size_t> slack_of(rows_, kNone);
        for (std::size_t i = 0; i < rows_; ++i) {
            flip[i] = lp.rhs[i] < 0;
            for (std::size_t j = 0; j < structural_ && slack_of[i] == kNone; ++j) {
                if (single_row[j] != i) continue;
                const Rat& a = lp.rows[i][j];
                if ((a == 1 && !flip[i]) || (a == -1 && (flip[i] || lp.rhs[i] == 0))) {
                    if (a == -1) flip[i] = true;
                    slack_of[i] = j;
                }
            }
        }
        std::size_t artificials = 0;
        for (std::size_t i = 0; i < rows_; ++i) artificials += slack_of[i] == kNone;

        // Columns: structural, then the artificials, then rhs.
        cols_ = structural_ + artificials;
        t_.assign(rows_, std::vector<Rat>(cols_ + 1));
        basis_.resize(rows_);
        std::size_t next_artificial = structural_;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = flip[i] ? Rat(-lp.rows[i][j]) : lp.rows[i][j];
            t_[i][cols_] = flip[i] ? Rat(-lp.rhs[i]) : lp.rhs[i];
            if (slack_of[i] != kNone) {
                basis_[i] = slack_of[i];
            } else {
                t_[i][next_artificial] = 1;
                basis_[i] = next_artificial++;
            }
        }
        active_.assign(rows_, true);
    }

    bool has_artificials() const { return cols_ > structural_; }

    // Returns false when unbounded.
    bool optimize(const std::vector<Rat>& cost, bool allow_artificial) {
        // Reduced costs d_j = c_j - c_B B^-1 A_j; objective row last entry holds -z.
        obj_.assign(cols_ + 1, Rat(0));
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!active_[i]) continue;
            const Rat& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= cb * t_[i][j];
        }
        for (;;) {
            std::size_t enter = kNone;
            std::size_t limit = allow_artificial ? cols_ : structural_;
            for (std::size_t j = 0; j < limit; ++j) {
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == kNone) return true;

            std::size_t leave = kNone;
            Rat best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!active_[i] || t_[i][enter] <= 0) continue;
                Rat ratio = t_[i][cols_] / t_[i][enter];
                if (leave == kNone || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == kNone) return false;
            pivot(leave, enter);
        }
    }

    Rat objective_value() const { return -obj_[cols_]; }

    // After phase I: pivot zero-level artificials out, or drop their rows
    // when the row is a combination of the others.
    void expel_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!active_[i] || basis_[i] < structural_) continue;
            std::size_t col = kNone;
            for (std::size_t j = 0; j < structural_; ++j) {
                if (t_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col == kNone)
                active_[i] = false;
            else
                pivot(i, col);
        }
    }

    std::vector<Rat> solution() const {
        std::vector<Rat> x(structural_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (active_[i] && basis_[i] < structural_) x[basis_[i]] = t_[i][cols_];
        return x;
    }

    std::size_t columns() const { return cols_; }
    std::size_t structural() const { return structural_; }
    std::size_t rows() const { return rows_; }

private:
    void pivot(std::size_t r, std::size_t c) {
        Rat inv = Rat(1) / t_[r][c];
        for (std::size_t j = 0; j <= cols_; ++j)
            if (t_[r][j] != 0) t_[r][j] *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || !active_[i] || t_[i][c] == 0) continue;
            Rat f = t_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
        }
        if (obj_[c] != 0) {
            Rat f = obj_[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[r][j] != 0) obj_[j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t rows_;
    std::size_t structural_;
    std::size_t cols_ = 0;
    std::vector<std::vector<Rat>> t_;
    std::vector<Rat> obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

} // namespace

LpResult solve_lp(const LinearProgram& lp) {
    Tableau tab(lp);
    const std::size_t n = tab.structural();

    if (tab.has_artificials()) {
        std::vector<Rat> phase1(tab.columns(), Rat(0));
        for (std::size_t j = n; j < tab.columns(); ++j) phase1[j] = 1;
        tab.optimize(phase1, true);
        if (tab.objective_value() > 0) return {LpStatus::Infeasible, {}, Rat(0)};
        tab.expel_artificials();
    }
    std::vector<Rat> phase2(tab.columns(), Rat(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.cost[j];
    if (!tab.optimize(phase2, false)) return {LpStatus::Unbounded, {}, Rat(0)};

    LpResult result;
    result.status = LpStatus::Optimal;
    result.x = tab.solution();
    result.objective = 0;
    for (std::size_t j = 0; j < n; ++j) result.objective += lp.cost[j] * result.x[j];
    return result;
}

} // namespace finadd
