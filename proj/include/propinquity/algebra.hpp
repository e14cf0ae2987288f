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

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "propinquity/util.hpp"

namespace propinquity {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEpimorphismTol = 1e-10;

/// A finite direct sum of complex matrix blocks. The commutative case is all
/// blocks 1x1, i.e. functions on a finite set.
///
/// Every algebra carries a fixed orthonormal Hermitian basis (trace inner
/// product), flattened block by block. Within a block of dimension d the
/// order is: I/sqrt(d); for each pair i<j in row-major order the symmetric
/// element (E_ij+E_ji)/sqrt(2) then the antisymmetric element
/// (-iE_ij+iE_ji)/sqrt(2); then the d-1 traceless diagonal elements
/// sqrt(1/(l(l+1))) (sum_{k<=l} E_kk - l E_{l+1,l+1}). Coordinates of
/// self-adjoint elements in this basis are real.
class FiniteDimCStarAlgebra {
  public:
    FiniteDimCStarAlgebra(std::string label, std::vector<int> blocks);

    const std::string& label() const { return label_; }
    const std::vector<int>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_dim(int k) const { return blocks_[static_cast<std::size_t>(k)]; }
    /// real dimension of the self-adjoint part, sum of d_k^2
    int sa_dim() const { return sa_dim_; }
    bool commutative() const;

    struct BasisElement {
        int block;
        CMatrix matrix;
    };
    const std::vector<BasisElement>& hermitian_basis() const { return basis_; }
    /// first basis index of a block's segment
    int block_offset(int k) const { return block_offsets_[static_cast<std::size_t>(k)]; }
    const RVector& unit_coords() const { return unit_coords_; }

    bool same_structure(const FiniteDimCStarAlgebra& other) const;

  private:
    std::string label_;
    std::vector<int> blocks_;
    int sa_dim_ = 0;
    std::vector<int> block_offsets_;
    std::vector<BasisElement> basis_;
    RVector unit_coords_;
};

using AlgebraPtr = std::shared_ptr<const FiniteDimCStarAlgebra>;

AlgebraPtr make_algebra(std::string label, std::vector<int> blocks);
/// commutative algebra with n one-dimensional blocks
AlgebraPtr make_commutative_algebra(std::string label, int points);

/// A self-adjoint element, stored as one Hermitian matrix per block.
class SelfAdjointElement {
  public:
    /// Validates Hermiticity of every block within 1e-12.
    SelfAdjointElement(AlgebraPtr parent, std::vector<CMatrix> blocks);

    static SelfAdjointElement zero(AlgebraPtr parent);
    static SelfAdjointElement unit(AlgebraPtr parent);
    static SelfAdjointElement from_coords(AlgebraPtr parent, const RVector& coords);
    /// commutative convenience: one real value per block
    static SelfAdjointElement from_values(AlgebraPtr parent, const std::vector<double>& values);

    const AlgebraPtr& parent() const { return parent_; }
    const std::vector<CMatrix>& block_data() const { return blocks_; }
    const CMatrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }

    RVector coords() const;

    SelfAdjointElement operator+(const SelfAdjointElement& other) const;
    SelfAdjointElement operator-(const SelfAdjointElement& other) const;
    SelfAdjointElement operator*(double scalar) const;

  private:
    SelfAdjointElement() = default;
    AlgebraPtr parent_;
    std::vector<CMatrix> blocks_;
};

/// (ab + ba) / 2
SelfAdjointElement jordan_product(const SelfAdjointElement& a, const SelfAdjointElement& b);
/// (ab - ba) / 2i
SelfAdjointElement lie_product(const SelfAdjointElement& a, const SelfAdjointElement& b);
/// max over blocks of the largest absolute eigenvalue
double operator_norm(const SelfAdjointElement& a);

/// A unital *-epimorphism between finite direct sums of matrix blocks,
/// stored structurally: each target block reads one source block of equal
/// dimension (distinct per target block), optionally through a unitary
/// conjugation pi(d)_j = U_j d_{sigma(j)} U_j*.
class StarEpimorphism {
  public:
    StarEpimorphism(AlgebraPtr source, AlgebraPtr target, std::vector<int> block_map,
                    std::vector<CMatrix> unitaries = {});

    static StarEpimorphism identity(AlgebraPtr algebra);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const std::vector<int>& block_map() const { return block_map_; }
    const std::vector<CMatrix>& unitaries() const { return unitaries_; }
    bool has_unitaries() const { return !unitaries_.empty(); }

    SelfAdjointElement apply(const SelfAdjointElement& d) const;

    /// matrix of the induced linear map sa(source) -> sa(target) in the
    /// fixed Hermitian bases (target_dim x source_dim), built once
    const RMatrix& coordinate_matrix() const;

    /// orthonormal coordinate basis of ker(pi) in sa(source): the basis
    /// directions of source blocks no target block reads
    const std::vector<int>& kernel_coordinates() const { return kernel_coords_; }

    /// a self-adjoint preimage of a (not unique)
    SelfAdjointElement lift(const SelfAdjointElement& a) const;

    bool same_mapping(const StarEpimorphism& other) const;

  private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<int> block_map_;
    std::vector<CMatrix> unitaries_;  // empty = identity conjugations
    RMatrix coord_matrix_;
    std::vector<int> kernel_coords_;
};

/// first `after` second (usual composition order)
StarEpimorphism compose(const StarEpimorphism& outer, const StarEpimorphism& inner);

struct DirectSum {
    AlgebraPtr algebra;
    StarEpimorphism onto_first;   // eta_1 : A (+) B -> A
    StarEpimorphism onto_second;  // eta_2 : A (+) B -> B
};
DirectSum direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

SelfAdjointElement apply_epimorphism(const StarEpimorphism& pi, const SelfAdjointElement& d);

/// Randomized sanity check of the homomorphism laws on sampled pairs
/// (multiplicativity, *-preservation, unitality), tolerance 1e-10.
struct EpimorphismCheckReport {
    bool pass = false;
    double max_residual = 0.0;
    int trials = 0;
};
EpimorphismCheckReport check_epimorphism(const StarEpimorphism& pi, int trials,
                                         std::uint64_t seed);

/// random self-adjoint element with independent standard-normal coordinates
SelfAdjointElement random_element(const AlgebraPtr& algebra, Rng& rng);

}  // namespace propinquity
