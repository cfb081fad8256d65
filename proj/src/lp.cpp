#include "hypertile/lp.hpp"

namespace hypertile {

namespace {

class Tableau {
public:
    Tableau(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows + 1) * (cols + 1)) {}

    // Row 0 is the objective row holding z_j - c_j; column `cols` is the rhs.
    Rational& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void pivot(int pr, int pc) {
        const Rational inv = 1 / Rational(at(pr, pc));
        std::vector<int> nz;
        for (int c = 0; c <= cols_; ++c) {
            Rational& v = at(pr, c);
            if (sgn(v) != 0) {
                v *= inv;
                nz.push_back(c);
            }
        }
        for (int r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            const Rational f = at(r, pc);
            if (sgn(f) == 0) continue;
            for (int c : nz) at(r, c) -= f * at(pr, c);
        }
    }

private:
    int rows_, cols_;
    std::vector<Rational> cells_;
};

struct Simplex {
    Tableau t;
    std::vector<int> basis;    // basis[i] = column basic in row i+1
    std::vector<char> banned;  // columns that may not enter
    std::size_t pivots = 0;

    // Bland's rule: lowest eligible entering column, ties in the ratio test
    // broken by the lowest basic column. Returns false if unbounded.
    bool run() {
        const int m = t.rows(), n = t.cols();
        while (true) {
            int enter = -1;
            for (int c = 0; c < n; ++c)
                if (!banned[c] && sgn(t.at(0, c)) < 0) {
                    enter = c;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int r = 1; r <= m; ++r) {
                if (sgn(t.at(r, enter)) <= 0) continue;
                Rational ratio = t.at(r, n) / t.at(r, enter);
                if (leave < 0 || ratio < best || (ratio == best && basis[r - 1] < basis[leave - 1])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            t.pivot(leave, enter);
            basis[leave - 1] = enter;
            ++pivots;
        }
    }

    void load_objective(const std::vector<Rational>& cost) {
        const int m = t.rows(), n = t.cols();
        for (int c = 0; c <= n; ++c) {
            Rational z = 0;
            for (int r = 1; r <= m; ++r) {
                const Rational& cb = cost[basis[r - 1]];
                if (sgn(cb) != 0) z += cb * t.at(r, c);
            }
            t.at(0, c) = c < n ? z - cost[c] : z;
        }
    }
};

}  // namespace

LpSolution maximize(const LinearProgram& lp) {
    const int m = static_cast<int>(lp.rows.size());
    const int nv = lp.num_vars;
    if (static_cast<int>(lp.objective.size()) != nv) throw ParameterError("objective length differs from num_vars");

    // Normalize to rhs >= 0, then lay out slack/surplus/artificial columns.
    std::vector<int> sign(m, 1);
    std::vector<Sense> sense(m);
    int extra = 0;
    for (int i = 0; i < m; ++i) {
        sense[i] = lp.rows[i].sense;
        if (sgn(lp.rows[i].rhs) < 0) {
            sign[i] = -1;
            if (sense[i] == Sense::LessEq) sense[i] = Sense::GreaterEq;
            else if (sense[i] == Sense::GreaterEq) sense[i] = Sense::LessEq;
        }
        extra += sense[i] == Sense::GreaterEq ? 2 : 1;
    }
    const int n = nv + extra;
    Simplex s{Tableau(m, n), std::vector<int>(m), std::vector<char>(n, 0)};
    std::vector<int> identity(m);
    std::vector<char> artificial(n, 0);
    int col = nv;
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        for (const auto& [v, a] : row.coeffs) {
            if (v < 0 || v >= nv) throw ParameterError("row refers to an unknown variable");
            s.t.at(i + 1, v) += sign[i] * a;
        }
        s.t.at(i + 1, n) = sign[i] * row.rhs;
        if (sense[i] == Sense::GreaterEq) s.t.at(i + 1, col++) = -1;
        s.t.at(i + 1, col) = 1;
        artificial[col] = sense[i] != Sense::LessEq;
        identity[i] = col;
        s.basis[i] = col++;
    }

    LpSolution sol;
    bool any_artificial = false;
    for (char a : artificial) any_artificial = any_artificial || a;
    if (any_artificial) {
        std::vector<Rational> phase1(n, 0);
        for (int c = 0; c < n; ++c)
            if (artificial[c]) phase1[c] = -1;
        s.load_objective(phase1);
        s.run();
        if (sgn(s.t.at(0, n)) != 0) {
            sol.status = LpStatus::Infeasible;
            sol.pivots = s.pivots;
            return sol;
        }
        // Pivot zero-valued artificials out where the row allows it.
        for (int r = 1; r <= m; ++r) {
            if (!artificial[s.basis[r - 1]]) continue;
            for (int c = 0; c < n; ++c)
                if (!artificial[c] && sgn(s.t.at(r, c)) != 0) {
                    s.t.pivot(r, c);
                    s.basis[r - 1] = c;
                    ++s.pivots;
                    break;
                }
        }
        for (int c = 0; c < n; ++c) s.banned[c] = artificial[c];
    }
    std::vector<Rational> cost(n, 0);
    for (int c = 0; c < nv; ++c) cost[c] = lp.objective[c];
    s.load_objective(cost);
    if (!s.run()) {
        sol.status = LpStatus::Unbounded;
        sol.pivots = s.pivots;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.value = s.t.at(0, n);
    sol.x.assign(nv, 0);
    for (int r = 1; r <= m; ++r)
        if (s.basis[r - 1] < nv) sol.x[s.basis[r - 1]] = s.t.at(r, n);
    sol.duals.resize(m);
    for (int i = 0; i < m; ++i) sol.duals[i] = sign[i] * s.t.at(0, identity[i]);
    sol.pivots = s.pivots;
    return sol;
}

}  // namespace hypertile
