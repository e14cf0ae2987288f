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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace propinquity::lp {

using Rational = boost::multiprecision::cpp_rational;

enum class RowSense { LessEqual, Equal, GreaterEqual };
enum class Objective { Minimize, Maximize };
enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* status_label(SolveStatus s);

/// A dense linear program over scalar type T (double or exact Rational).
///
/// Variables carry optional lower/upper bounds (absent = unbounded on that
/// side). Rows are dense with a per-row sense. The solver is a two-phase
/// primal simplex with Bland's rule, so results are deterministic for a
/// fixed program.
template <typename T>
struct Program {
    Objective sense = Objective::Minimize;
    std::vector<T> objective;                 // length = variable count
    std::vector<std::vector<T>> rows;         // each of length = variable count
    std::vector<RowSense> row_senses;
    std::vector<T> rhs;
    std::vector<std::optional<T>> lower;      // per variable; nullopt = -inf
    std::vector<std::optional<T>> upper;      // per variable; nullopt = +inf
    long max_iterations = 100000;

    int variable_count() const { return static_cast<int>(objective.size()); }
    int row_count() const { return static_cast<int>(rows.size()); }

    /// Appends a variable with the given bounds; returns its index.
    int add_variable(T cost, std::optional<T> lo, std::optional<T> hi);
    void add_row(std::vector<T> coeffs, RowSense sense, T rhs_value);

    /// Throws std::invalid_argument on mismatched dimensions or (for
    /// doubles) non-finite entries.
    void check_well_formed() const;
};

template <typename T>
struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    T value{};
    std::vector<T> x;  // populated when status == Optimal
    long iterations = 0;
    /// max primal residual over rows and bounds, recomputed from x
    T primal_residual{};
    /// max dual-feasibility violation of the final reduced costs
    T dual_residual{};
};

template <typename T>
Solution<T> solve(const Program<T>& program);

extern template struct Program<double>;
extern template struct Program<Rational>;
extern template Solution<double> solve<double>(const Program<double>&);
extern template Solution<Rational> solve<Rational>(const Program<Rational>&);

/// Plain-text tableau-style dump for debugging.
std::string dump_program(const Program<double>& program);

}  // namespace propinquity::lp
