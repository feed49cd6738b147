#pragma once

#include "finadd/rational.hpp"

#include <vector>

namespace finadd {

/// minimize cost·x  subject to  rows·x = rhs,  x >= 0
struct LinearProgram {
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    std::vector<Rat> cost;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> x;   // basic solution when Optimal
    Rat objective;
};

// Two-phase dense tableau simplex over exact rationals. Pivoting follows
// Bland's rule (lowest entering index, lowest leaving basic index on ratio
// ties), so it terminates and is deterministic.
LpResult solve_lp(const LinearProgram& lp);

} // namespace finadd
