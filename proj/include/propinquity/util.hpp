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

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace propinquity {

/// How a reported number was obtained. Commutative pipelines are exact;
/// sampling over pure-state manifolds yields estimates; frame-linearized
/// operator norms yield polyhedral approximations.
enum class Mode { Exact, Estimate, PolyhedralApproximation };

const char* mode_label(Mode mode);

/// Keeps the weakest guarantee of the two inputs.
Mode combine_modes(Mode a, Mode b);

struct TaggedValue {
    double value = 0.0;
    Mode mode = Mode::Exact;
};

/// Deterministic RNG. Draws are derived from raw mt19937_64 output so the
/// stream does not depend on the standard library's distribution
/// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// uniform on [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    /// standard normal via Box-Muller
    double normal();
    /// uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi);

  private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Runs fn(0..n-1) on up to `workers` threads. Results must be written to
/// pre-sized slots; the caller reduces sequentially so reductions stay
/// deterministic. workers <= 1 runs inline.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

int default_worker_count();

/// FNV-1a 64-bit content digest, used to fingerprint input files in reports.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

}  // namespace propinquity
