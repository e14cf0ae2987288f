/*
 * Copyright 2026 The propinquity-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "propinquity/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace propinquity::lp {

const char* status_label(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

namespace {

template <typename T>
struct Tolerances {
    static T cost() { return T(0); }
    static T pivot() { return T(0); }
    static T feas() { return T(0); }
};

template <>
struct Tolerances<double> {
    static double cost() { return 1e-9; }
    static double pivot() { return 1e-11; }
    static double feas() { return 1e-9; }
};

template <typename T>
bool is_finite_entry(const T&) {
    return true;
}
template <>
bool is_finite_entry<double>(const double& v) {
    return std::isfinite(v);
}

template <typename T>
T abs_val(const T& v) {
    using std::abs;
    return abs(v);
}

enum class VarStatus : unsigned char { NonbasicLower, NonbasicUpper, Basic };

// How an original variable maps onto computational (>= 0) columns.
enum class XformKind : unsigned char { ShiftLower, FlipUpper, FreeSplit };

template <typename T>
struct Xform {
    XformKind kind;
    int col = -1;        // primary column
    int col_neg = -1;    // second column for FreeSplit
    T offset{};          // lower bound (ShiftLower) or upper bound (FlipUpper)
};

/// Bounded-variable primal simplex on the computational form
///   min c.x  s.t.  A x = b,  0 <= x_j <= ub_j (ub possibly +inf).
/// Tableau rows are kept as B^-1 A; beta holds the *current values* of the
/// basic variables (nonbasic-at-upper contributions already folded in).
template <typename T>
class Simplex {
  public:
    int m = 0;  // rows
    int n = 0;  // columns
    std::vector<std::vector<T>> tab;  // m x n
    std::vector<T> beta;              // m, values of basic variables
    std::vector<T> ub;                // n, upper bounds (has_ub marks finiteness)
    std::vector<char> has_ub;
    std::vector<char> is_artificial;
    std::vector<int> basis;           // m, variable index basic in each row
    std::vector<VarStatus> status;    // n
    std::vector<T> zrow;              // n, reduced costs for current cost vector
    long iterations = 0;
    long max_iterations = 100000;

    bool fixed_var(int j) const { return has_ub[j] && ub[j] == T(0); }

    T value_of(int j) const {
        if (status[j] == VarStatus::NonbasicLower) return T(0);
        if (status[j] == VarStatus::NonbasicUpper) return ub[j];
        for (int i = 0; i < m; ++i)
            if (basis[i] == j) return beta[i];
        return T(0);
    }

    void set_costs(const std::vector<T>& c) {
        zrow = c;
        for (int i = 0; i < m; ++i) {
            const T cb = c[basis[i]];
            if (cb == T(0)) continue;
            for (int j = 0; j < n; ++j) zrow[j] -= cb * tab[i][j];
        }
    }

    SolveStatus run() {
        const T ctol = Tolerances<T>::cost();
        const T ptol = Tolerances<T>::pivot();
        for (;;) {
            if (iterations >= max_iterations) return SolveStatus::IterationLimit;

            // Bland: smallest-index favorable entering variable.
            int enter = -1;
            int dir = 0;
            for (int j = 0; j < n; ++j) {
                if (status[j] == VarStatus::Basic || fixed_var(j)) continue;
                if (status[j] == VarStatus::NonbasicLower && zrow[j] < -ctol) {
                    enter = j;
                    dir = 1;
                    break;
                }
                if (status[j] == VarStatus::NonbasicUpper && zrow[j] > ctol) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return SolveStatus::Optimal;
            ++iterations;

            // Ratio test; ties resolved toward the smallest leaving variable
            // index (Bland).
            bool limited = false;
            bool flip = false;
            bool leave_to_upper = false;
            int leave_row = -1;
            int leave_var = -1;
            T tmax{};
            auto consider = [&](const T& limit, int row, int var, bool to_upper) {
                if (!limited || limit < tmax || (limit == tmax && var < leave_var)) {
                    limited = true;
                    tmax = limit;
                    leave_row = row;
                    leave_var = var;
                    leave_to_upper = to_upper;
                    flip = (row < 0);
                }
            };
            for (int i = 0; i < m; ++i) {
                const T g = dir > 0 ? tab[i][enter] : T(-tab[i][enter]);
                if (g > ptol) {
                    consider(T(beta[i] / g), i, basis[i], false);
                } else if (g < -ptol && has_ub[basis[i]]) {
                    consider(T((ub[basis[i]] - beta[i]) / (-g)), i, basis[i], true);
                }
            }
            if (has_ub[enter]) consider(ub[enter], -1, enter, false);
            if (!limited) return SolveStatus::Unbounded;
            if (tmax < T(0)) tmax = T(0);  // numerical guard on degenerate steps

            const T step = dir > 0 ? tmax : T(-tmax);
            if (flip) {
                for (int i = 0; i < m; ++i) beta[i] -= step * tab[i][enter];
                status[enter] = (dir > 0) ? VarStatus::NonbasicUpper : VarStatus::NonbasicLower;
                continue;
            }

            // Pivot: move, then exchange basis[leave_row] <-> enter.
            for (int i = 0; i < m; ++i) beta[i] -= step * tab[i][enter];
            const T enter_value = dir > 0 ? tmax : T(ub[enter] - tmax);
            const int leaving = basis[leave_row];
            status[leaving] = leave_to_upper ? VarStatus::NonbasicUpper : VarStatus::NonbasicLower;
            basis[leave_row] = enter;
            status[enter] = VarStatus::Basic;
            beta[leave_row] = enter_value;

            std::vector<T>& prow = tab[leave_row];
            const T piv = prow[enter];
            for (int j = 0; j < n; ++j) prow[j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave_row) continue;
                const T f = tab[i][enter];
                if (f == T(0)) continue;
                std::vector<T>& row = tab[i];
                for (int j = 0; j < n; ++j) row[j] -= f * prow[j];
            }
            const T zf = zrow[enter];
            if (zf != T(0)) {
                for (int j = 0; j < n; ++j) zrow[j] -= zf * prow[j];
            }
        }
    }
};

}  // namespace

template <typename T>
int Program<T>::add_variable(T cost, std::optional<T> lo, std::optional<T> hi) {
    objective.push_back(cost);
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    for (auto& row : rows) row.push_back(T(0));
    return static_cast<int>(objective.size()) - 1;
}

template <typename T>
void Program<T>::add_row(std::vector<T> coeffs, RowSense sense, T rhs_value) {
    if (static_cast<int>(coeffs.size()) != variable_count())
        throw std::invalid_argument("lp: row width does not match variable count");
    rows.push_back(std::move(coeffs));
    row_senses.push_back(sense);
    rhs.push_back(std::move(rhs_value));
}

template <typename T>
void Program<T>::check_well_formed() const {
    const auto n = objective.size();
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("lp: bounds size mismatch");
    if (rows.size() != row_senses.size() || rows.size() != rhs.size())
        throw std::invalid_argument("lp: row bookkeeping mismatch");
    for (const auto& c : objective)
        if (!is_finite_entry(c)) throw std::invalid_argument("lp: non-finite objective entry");
    for (const auto& row : rows) {
        if (row.size() != n) throw std::invalid_argument("lp: ragged constraint matrix");
        for (const auto& a : row)
            if (!is_finite_entry(a)) throw std::invalid_argument("lp: non-finite row entry");
    }
    for (const auto& b : rhs)
        if (!is_finite_entry(b)) throw std::invalid_argument("lp: non-finite rhs entry");
    for (std::size_t j = 0; j < n; ++j) {
        if (lower[j] && !is_finite_entry(*lower[j]))
            throw std::invalid_argument("lp: non-finite lower bound");
        if (upper[j] && !is_finite_entry(*upper[j]))
            throw std::invalid_argument("lp: non-finite upper bound");
    }
}

template <typename T>
Solution<T> solve(const Program<T>& program) {
    program.check_well_formed();
    Solution<T> out;

    const int n_orig = program.variable_count();
    const int m = program.row_count();

    // Trivially infeasible bound pairs.
    for (int j = 0; j < n_orig; ++j) {
        if (program.lower[j] && program.upper[j] && *program.upper[j] < *program.lower[j]) {
            out.status = SolveStatus::Infeasible;
            return out;
        }
    }

    const bool maximize = program.sense == Objective::Maximize;

    Simplex<T> s;
    s.m = m;
    s.max_iterations = program.max_iterations;

    // Computational columns for the original variables.
    std::vector<Xform<T>> xf(n_orig);
    std::vector<T> c2;      // phase-2 costs per computational column
    auto new_col = [&](T cost, std::optional<T> hi) {
        c2.push_back(std::move(cost));
        s.ub.push_back(hi ? *hi : T(0));
        s.has_ub.push_back(hi ? 1 : 0);
        s.is_artificial.push_back(0);
        return static_cast<int>(c2.size()) - 1;
    };
    for (int j = 0; j < n_orig; ++j) {
        const T cost = maximize ? T(-program.objective[j]) : program.objective[j];
        if (program.lower[j]) {
            std::optional<T> span;
            if (program.upper[j]) span = T(*program.upper[j] - *program.lower[j]);
            xf[j] = {XformKind::ShiftLower, new_col(cost, span), -1, *program.lower[j]};
        } else if (program.upper[j]) {
            xf[j] = {XformKind::FlipUpper, new_col(T(-cost), std::nullopt), -1, *program.upper[j]};
        } else {
            const int cp = new_col(cost, std::nullopt);
            const int cn = new_col(T(-cost), std::nullopt);
            xf[j] = {XformKind::FreeSplit, cp, cn, T(0)};
        }
    }
    const int n_struct = static_cast<int>(c2.size());

    // Equality-form rows over computational columns.
    std::vector<std::vector<T>> eq(m);
    std::vector<T> beq(m);
    for (int i = 0; i < m; ++i) {
        const T sgn = program.row_senses[i] == RowSense::GreaterEqual ? T(-1) : T(1);
        std::vector<T> row(n_struct, T(0));
        T b = sgn * program.rhs[i];
        for (int j = 0; j < n_orig; ++j) {
            const T a = sgn * program.rows[i][j];
            if (a == T(0)) continue;
            switch (xf[j].kind) {
                case XformKind::ShiftLower:
                    row[xf[j].col] += a;
                    b -= a * xf[j].offset;
                    break;
                case XformKind::FlipUpper:
                    row[xf[j].col] -= a;
                    b -= a * xf[j].offset;
                    break;
                case XformKind::FreeSplit:
                    row[xf[j].col] += a;
                    row[xf[j].col_neg] -= a;
                    break;
            }
        }
        eq[i] = std::move(row);
        beq[i] = std::move(b);
    }

    // Slacks for inequality rows.
    std::vector<int> slack_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (program.row_senses[i] == RowSense::Equal) continue;
        slack_col[i] = new_col(T(0), std::nullopt);  // slack in [0, inf)
    }
    const int n_with_slack = static_cast<int>(c2.size());
    for (int i = 0; i < m; ++i) {
        eq[i].resize(n_with_slack, T(0));
        if (slack_col[i] >= 0) eq[i][slack_col[i]] = T(1);
    }

    // Nonnegative rhs, then one artificial per row as the starting basis.
    for (int i = 0; i < m; ++i) {
        if (beq[i] < T(0)) {
            for (auto& a : eq[i]) a = -a;
            beq[i] = -beq[i];
        }
    }
    std::vector<int> art_col(m);
    for (int i = 0; i < m; ++i) {
        art_col[i] = new_col(T(0), std::nullopt);
        s.is_artificial.back() = 1;
    }
    s.n = static_cast<int>(c2.size());
    for (int i = 0; i < m; ++i) {
        eq[i].resize(s.n, T(0));
        eq[i][art_col[i]] = T(1);
    }

    s.tab = std::move(eq);
    s.beta = beq;
    s.basis = art_col;
    s.status.assign(s.n, VarStatus::NonbasicLower);
    for (int i = 0; i < m; ++i) s.status[art_col[i]] = VarStatus::Basic;

    // Phase 1: minimize the sum of artificials.
    std::vector<T> c1(s.n, T(0));
    for (int i = 0; i < m; ++i) c1[art_col[i]] = T(1);
    s.set_costs(c1);
    SolveStatus st = s.run();
    out.iterations = s.iterations;
    if (st != SolveStatus::Optimal) {
        // Phase 1 is bounded below by zero, so anything but Optimal here is a
        // numerical breakdown; report it as the explicit failure status.
        out.status = SolveStatus::IterationLimit;
        return out;
    }
    T infeasibility = T(0);
    for (int i = 0; i < m; ++i)
        if (s.is_artificial[s.basis[i]]) infeasibility += s.beta[i];
    if (infeasibility > Tolerances<T>::feas()) {
        out.status = SolveStatus::Infeasible;
        return out;
    }

    // Drive artificials out of the basis where possible; leftover rows are
    // redundant and their artificials stay pinned at zero.
    const T ptol = Tolerances<T>::pivot();
    for (int i = 0; i < m; ++i) {
        const int bi = s.basis[i];
        if (!s.is_artificial[bi]) continue;
        int piv_col = -1;
        for (int j = 0; j < s.n; ++j) {
            if (s.is_artificial[j] || s.status[j] == VarStatus::Basic) continue;
            if (abs_val(s.tab[i][j]) > ptol) {
                piv_col = j;
                break;
            }
        }
        if (piv_col < 0) continue;
        // Degenerate exchange at step 0.
        const T enter_value = s.status[piv_col] == VarStatus::NonbasicUpper ? s.ub[piv_col] : T(0);
        s.status[bi] = VarStatus::NonbasicLower;
        s.basis[i] = piv_col;
        s.status[piv_col] = VarStatus::Basic;
        std::vector<T>& prow = s.tab[i];
        const T piv = prow[piv_col];
        for (int j = 0; j < s.n; ++j) prow[j] /= piv;
        for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            const T f = s.tab[r][piv_col];
            if (f == T(0)) continue;
            for (int j = 0; j < s.n; ++j) s.tab[r][j] -= f * prow[j];
        }
        s.beta[i] = enter_value;
    }
    // Artificials may not re-enter.
    for (int i = 0; i < m; ++i) {
        s.ub[art_col[i]] = T(0);
        s.has_ub[art_col[i]] = 1;
    }

    // Phase 2.
    s.set_costs(c2);
    st = s.run();
    out.iterations = s.iterations;
    if (st != SolveStatus::Optimal) {
        out.status = st;
        return out;
    }

    // Recover original variables.
    std::vector<T> xc(s.n, T(0));
    for (int j = 0; j < s.n; ++j)
        if (s.status[j] == VarStatus::NonbasicUpper) xc[j] = s.ub[j];
    for (int i = 0; i < m; ++i) xc[s.basis[i]] = s.beta[i];

    out.x.resize(n_orig);
    for (int j = 0; j < n_orig; ++j) {
        switch (xf[j].kind) {
            case XformKind::ShiftLower: out.x[j] = T(xf[j].offset + xc[xf[j].col]); break;
            case XformKind::FlipUpper: out.x[j] = T(xf[j].offset - xc[xf[j].col]); break;
            case XformKind::FreeSplit: out.x[j] = T(xc[xf[j].col] - xc[xf[j].col_neg]); break;
        }
    }
    T value = T(0);
    for (int j = 0; j < n_orig; ++j) value += program.objective[j] * out.x[j];
    out.value = value;

    // Certificates: primal residual from the recovered point and dual
    // residual from the final reduced costs.
    T presid = T(0);
    for (int i = 0; i < m; ++i) {
        T ax = T(0);
        for (int j = 0; j < n_orig; ++j) ax += program.rows[i][j] * out.x[j];
        const T diff = ax - program.rhs[i];
        T viol = T(0);
        switch (program.row_senses[i]) {
            case RowSense::LessEqual: viol = diff > T(0) ? diff : T(0); break;
            case RowSense::GreaterEqual: viol = diff < T(0) ? T(-diff) : T(0); break;
            case RowSense::Equal: viol = abs_val(diff); break;
        }
        if (viol > presid) presid = viol;
    }
    for (int j = 0; j < n_orig; ++j) {
        if (program.lower[j] && out.x[j] < *program.lower[j]) {
            const T v = *program.lower[j] - out.x[j];
            if (v > presid) presid = v;
        }
        if (program.upper[j] && out.x[j] > *program.upper[j]) {
            const T v = out.x[j] - *program.upper[j];
            if (v > presid) presid = v;
        }
    }
    out.primal_residual = presid;

    T dresid = T(0);
    for (int j = 0; j < s.n; ++j) {
        if (s.fixed_var(j)) continue;
        T v = T(0);
        if (s.status[j] == VarStatus::NonbasicLower && s.zrow[j] < T(0)) v = -s.zrow[j];
        if (s.status[j] == VarStatus::NonbasicUpper && s.zrow[j] > T(0)) v = s.zrow[j];
        if (v > dresid) dresid = v;
    }
    out.dual_residual = dresid;

    out.status = SolveStatus::Optimal;
    return out;
}

std::string dump_program(const Program<double>& program) {
    std::ostringstream os;
    os << (program.sense == Objective::Minimize ? "min" : "max");
    for (double c : program.objective) os << ' ' << c;
    os << '\n';
    for (int i = 0; i < program.row_count(); ++i) {
        for (double a : program.rows[i]) os << a << ' ';
        switch (program.row_senses[i]) {
            case RowSense::LessEqual: os << "<= "; break;
            case RowSense::Equal: os << "== "; break;
            case RowSense::GreaterEqual: os << ">= "; break;
        }
        os << program.rhs[i] << '\n';
    }
    for (int j = 0; j < program.variable_count(); ++j) {
        os << 'x' << j << " in [";
        if (program.lower[j]) os << *program.lower[j];
        else os << "-inf";
        os << ", ";
        if (program.upper[j]) os << *program.upper[j];
        else os << "+inf";
        os << "]\n";
    }
    return os.str();
}

template struct Program<double>;
template struct Program<Rational>;
template Solution<double> solve<double>(const Program<double>&);
template Solution<Rational> solve<Rational>(const Program<Rational>&);

}  // namespace propinquity::lp
