#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "belldepth/rational.hpp"

namespace belldepth {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;  // meaningful only when Optimal
    RatVec point;    // a primal minimizer, filled when Optimal
};

namespace detail {

/// Dense standard-form simplex: min c.z s.t. Gz = h, z >= 0.
/// Pivot rule: Dantzig with a deterministic switch to Bland after a fixed
/// iteration budget, which keeps termination guaranteed on degenerate input.
class StandardSimplex {
  public:
    StandardSimplex(std::vector<RatVec> G, RatVec h, RatVec c)
        : G_(std::move(G)), h_(std::move(h)), c_(std::move(c)) {}

    LPResult solve() {
        const size_t r = G_.size();
        n_ = r ? G_[0].size() : c_.size();
        row_sign_.assign(r, 1);
        for (size_t i = 0; i < r; ++i) {
            if (h_[i] < 0) {
                for (auto& v : G_[i]) v = -v;
                h_[i] = -h_[i];
                row_sign_[i] = -1;
            }
        }
        ncols_ = n_ + r;
        T_.assign(r, RatVec(ncols_ + 1, Rational(0)));
        basis_.resize(r);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < n_; ++j) T_[i][j] = G_[i][j];
            T_[i][n_ + i] = 1;
            T_[i][ncols_] = h_[i];
            basis_[i] = n_ + i;
        }
        // phase 1: minimize the artificial sum
        cost_.assign(ncols_ + 1, Rational(0));
        for (size_t j = 0; j < ncols_; ++j) {
            Rational s = 0;
            for (size_t i = 0; i < r; ++i) s += T_[i][j];
            cost_[j] = (j >= n_ ? Rational(1) : Rational(0)) - s;
        }
        Rational tot = 0;
        for (size_t i = 0; i < r; ++i) tot += T_[i][ncols_];
        cost_[ncols_] = -tot;
        blocked_.assign(ncols_, false);
        bool ok = run_phase();
        assert(ok);
        (void)ok;
        if (-cost_[ncols_] > 0) return {LPStatus::Infeasible, Rational(0), {}};
        for (size_t i = 0; i < r; ++i) {
            if (basis_[i] >= n_) {
                for (size_t j = 0; j < n_; ++j) {
                    if (T_[i][j] != 0) {
                        pivot(i, j);
                        break;
                    }
                }
            }
        }
        // phase 2
        cost_.assign(ncols_ + 1, Rational(0));
        for (size_t j = 0; j < n_; ++j) cost_[j] = c_[j];
        for (size_t i = 0; i < r; ++i) {
            if (basis_[i] < n_ && cost_[basis_[i]] != 0) {
                Rational f = cost_[basis_[i]];
                for (size_t j = 0; j <= ncols_; ++j) cost_[j] -= f * T_[i][j];
            }
        }
        for (size_t j = n_; j < ncols_; ++j) blocked_[j] = true;
        if (!run_phase()) return {LPStatus::Unbounded, Rational(0), {}};
        LPResult res{LPStatus::Optimal, -cost_[ncols_], {}};
        // simplex multipliers live in the artificial columns' reduced costs
        res.point.resize(r);
        for (size_t i = 0; i < r; ++i)
            res.point[i] = Rational(row_sign_[i]) * cost_[n_ + i];
        return res;
    }

  private:
    void pivot(size_t row, size_t col) {
        Rational piv = T_[row][col];
        if (piv != 1)
            for (size_t j = 0; j <= ncols_; ++j) T_[row][j] /= piv;
        for (size_t i = 0; i < T_.size(); ++i) {
            if (i == row || T_[i][col] == 0) continue;
            Rational f = T_[i][col];
            for (size_t j = 0; j <= ncols_; ++j)
                if (T_[row][j] != 0) T_[i][j] -= f * T_[row][j];
        }
        Rational f = cost_[col];
        if (f != 0)
            for (size_t j = 0; j <= ncols_; ++j)
                if (T_[row][j] != 0) cost_[j] -= f * T_[row][j];
        basis_[row] = col;
    }

    /// Returns false iff unbounded.
    bool run_phase() {
        const size_t dantzig_budget = 200 + 12 * T_.size();
        size_t iter = 0;
        for (;;) {
            ++iter;
            size_t enter = ncols_;
            if (iter <= dantzig_budget) {
                const Rational* best = nullptr;
                for (size_t j = 0; j < ncols_; ++j)
                    if (!blocked_[j] && cost_[j] < 0 && (!best || cost_[j] < *best)) {
                        best = &cost_[j];
                        enter = j;
                    }
            } else {  // Bland
                for (size_t j = 0; j < ncols_; ++j)
                    if (!blocked_[j] && cost_[j] < 0) {
                        enter = j;
                        break;
                    }
            }
            if (enter == ncols_) return true;
            size_t leave = T_.size();
            Rational best;
            for (size_t i = 0; i < T_.size(); ++i) {
                if (T_[i][enter] > 0) {
                    Rational ratio = T_[i][ncols_] / T_[i][enter];
                    if (leave == T_.size() || ratio < best ||
                        (ratio == best && basis_[i] < basis_[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == T_.size()) return false;
            pivot(leave, enter);
        }
    }

    std::vector<RatVec> G_;
    RatVec h_, c_;
    std::vector<RatVec> T_;
    RatVec cost_;
    std::vector<size_t> basis_;
    std::vector<bool> blocked_;
    std::vector<int> row_sign_;
    size_t n_ = 0, ncols_ = 0;
};

}  // namespace detail

/// Exact LP  min c.x  s.t.  A x >= b  over free x, solved through its dual
/// (m dual variables, dim(x) equality rows), so tableau height scales with the
/// small dimension rather than the constraint count. Optimal results carry a
/// primal minimizer recovered from the simplex multipliers.
inline LPResult lp_minimize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c);

inline bool lp_feasible(const std::vector<RatVec>& A, const RatVec& b) {
    if (A.empty()) return true;
    const size_t d = A[0].size();
    std::vector<RatVec> A2;
    A2.reserve(A.size() + 1);
    for (const auto& row : A) {
        RatVec r = row;
        r.push_back(1);
        A2.push_back(std::move(r));
    }
    RatVec last(d + 1, Rational(0));
    last[d] = 1;
    A2.push_back(last);
    RatVec b2 = b;
    b2.push_back(0);
    RatVec c2(d + 1, Rational(0));
    c2[d] = 1;
    // this LP is feasible (large t) and bounded below (t >= 0): always Optimal
    LPResult res = lp_minimize(A2, b2, c2);
    assert(res.status == LPStatus::Optimal);
    return res.value <= 0;
}

inline LPResult lp_minimize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c) {
    const size_t m = A.size();
    const size_t d = c.size();
    if (m == 0) {
        for (const auto& q : c)
            if (q != 0) return {LPStatus::Unbounded, Rational(0), {}};
        return {LPStatus::Optimal, Rational(0), RatVec(d, Rational(0))};
    }
    // dual: max b.y s.t. A^T y = c, y >= 0  ==  min (-b).y
    std::vector<RatVec> G(d, RatVec(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < d; ++j) G[j][i] = A[i][j];
    RatVec negb(m);
    for (size_t i = 0; i < m; ++i) negb[i] = -b[i];
    LPResult dual = detail::StandardSimplex(std::move(G), c, std::move(negb)).solve();
    switch (dual.status) {
        case LPStatus::Optimal: {
            LPResult out{LPStatus::Optimal, -dual.value, {}};
            out.point = std::move(dual.point);
            return out;
        }
        case LPStatus::Unbounded:
            return {LPStatus::Infeasible, Rational(0), {}};
        case LPStatus::Infeasible:
            // primal is unbounded or infeasible; one feasibility probe decides
            return lp_feasible(A, b) ? LPResult{LPStatus::Unbounded, Rational(0), {}}
                                     : LPResult{LPStatus::Infeasible, Rational(0), {}};
    }
    return {LPStatus::Infeasible, Rational(0), {}};
}

namespace detail {

/// Floating-point twin of the dual standard-form simplex. Only used as a
/// GUIDE: it proposes an optimal basis whose exact certificate is verified in
/// rational arithmetic by the caller. Never trusted on its own.
class FloatGuideLP {
  public:
    /// min c.x s.t. Ax >= b. Returns true with the proposed tight/support
    /// constraint set on success, false when the guide run is inconclusive.
    static bool propose_basis(const std::vector<std::vector<double>>& A,
                              const std::vector<double>& b, const std::vector<double>& c,
                              std::vector<size_t>& basis_rows) {
        const size_t m = A.size();
        const size_t d = c.size();
        if (m == 0) return false;
        // dual: min (-b).y st A^T y = c, y >= 0
        const size_t n = m, rows = d, ncols = n + rows;
        std::vector<std::vector<double>> T(rows, std::vector<double>(ncols + 1, 0.0));
        std::vector<double> cost(ncols + 1, 0.0);
        std::vector<size_t> basis(rows);
        std::vector<int> rs(rows, 1);
        for (size_t j = 0; j < rows; ++j) {
            double h = c[j];
            int sign = h < 0 ? -1 : 1;
            rs[j] = sign;
            for (size_t i = 0; i < m; ++i) T[j][i] = sign * A[i][j];
            T[j][n + j] = 1.0;
            T[j][ncols] = sign * h;
            basis[j] = n + j;
        }
        const double eps = 1e-9;
        std::vector<bool> blocked(ncols, false);
        auto run = [&](size_t limit) -> int {
            for (size_t iter = 0; iter < limit; ++iter) {
                size_t enter = ncols;
                double best = -eps;
                for (size_t j = 0; j < ncols; ++j)
                    if (!blocked[j] && cost[j] < best) {
                        best = cost[j];
                        enter = j;
                    }
                if (enter == ncols) return 0;  // optimal
                size_t leave = rows;
                double bestr = 0;
                for (size_t i = 0; i < rows; ++i) {
                    if (T[i][enter] > eps) {
                        double ratio = T[i][ncols] / T[i][enter];
                        if (leave == rows || ratio < bestr) {
                            bestr = ratio;
                            leave = i;
                        }
                    }
                }
                if (leave == rows) return 1;  // unbounded phase
                double piv = T[leave][enter];
                for (size_t j = 0; j <= ncols; ++j) T[leave][j] /= piv;
                for (size_t i = 0; i < rows; ++i) {
                    if (i == leave || std::abs(T[i][enter]) < 1e-300) continue;
                    double f = T[i][enter];
                    for (size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
                }
                double f = cost[enter];
                for (size_t j = 0; j <= ncols; ++j) cost[j] -= f * T[leave][j];
                basis[leave] = enter;
            }
            return 2;  // iteration limit
        };
        // phase 1
        for (size_t j = 0; j < ncols; ++j) {
            double s = 0;
            for (size_t i = 0; i < rows; ++i) s += T[i][j];
            cost[j] = (j >= n ? 1.0 : 0.0) - s;
        }
        double tot = 0;
        for (size_t i = 0; i < rows; ++i) tot += T[i][ncols];
        cost[ncols] = -tot;
        if (run(40 * (rows + 8)) != 0) return false;
        if (-cost[ncols] > 1e-7) return false;  // dual infeasible-ish: no guidance
        for (size_t i = 0; i < rows; ++i) {
            if (basis[i] >= n) {
                for (size_t j = 0; j < n; ++j)
                    if (std::abs(T[i][j]) > 1e-7) {
                        double piv = T[i][j];
                        for (size_t t = 0; t <= ncols; ++t) T[i][t] /= piv;
                        for (size_t r2 = 0; r2 < rows; ++r2) {
                            if (r2 == i) continue;
                            double f2 = T[r2][j];
                            if (std::abs(f2) < 1e-300) continue;
                            for (size_t t = 0; t <= ncols; ++t) T[r2][t] -= f2 * T[i][t];
                        }
                        basis[i] = j;
                        break;
                    }
            }
        }
        // phase 2
        std::fill(cost.begin(), cost.end(), 0.0);
        for (size_t i = 0; i < n; ++i) cost[i] = -b[i];
        for (size_t i = 0; i < rows; ++i) {
            if (basis[i] < n && cost[basis[i]] != 0.0) {
                double f = cost[basis[i]];
                for (size_t j = 0; j <= ncols; ++j) cost[j] -= f * T[i][j];
            }
        }
        for (size_t j = n; j < ncols; ++j) blocked[j] = true;
        if (run(40 * (rows + 8)) != 0) return false;
        basis_rows.clear();
        for (size_t i = 0; i < rows; ++i)
            if (basis[i] < n) basis_rows.push_back(basis[i]);
        std::sort(basis_rows.begin(), basis_rows.end());
        return true;
    }
};

}  // namespace detail

}  // namespace belldepth
