#pragma once

#include <utility>
#include <vector>

#include "hypertile/common.hpp"

namespace hypertile {

enum class Sense { LessEq, GreaterEq, Equal };

// maximize objective . x  subject to rows, x >= 0.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, Rational>> coeffs;  // (variable, coefficient)
        Sense sense = Sense::LessEq;
        Rational rhs;
    };
    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
    // One multiplier per row; at an optimum objective = rhs . duals.
    std::vector<Rational> duals;
    std::size_t pivots = 0;
};

// Two-phase dense-tableau simplex in exact arithmetic with Bland's rule.
LpSolution maximize(const LinearProgram& lp);

}  // namespace hypertile
