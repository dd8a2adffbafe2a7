/*
 * Copyright 2026 The gpi Authors.
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

#include <gpi/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

namespace gpi {

template <typename Scalar = double>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// |lambda| below this fraction of the largest |lambda| counts as a zero eigenvalue.
inline constexpr double zero_eigenvalue_tolerance = 1e-10;

///
/// Eigendecomposition of a symmetric matrix with its row space separated from its null space.
///
/// Eigenvalues are sorted in descending order, so row-space modes come first and the
/// (near-)zero modes last. Each eigenvector is sign-normalized so that its largest-magnitude
/// component is positive, which makes the decomposition reproducible.
///
template <typename Scalar = double>
struct Spectrum
{
    Vector<Scalar> eigenvalues;
    Matrix<Scalar> eigenvectors; ///< columns, orthonormal
    std::vector<Eigen::Index> row_space_indices;
    std::vector<Eigen::Index> null_indices;

    Eigen::Index rank() const { return static_cast<Eigen::Index>(row_space_indices.size()); }

    bool is_null_mode(Eigen::Index k) const
    {
        return std::find(null_indices.begin(), null_indices.end(), k) != null_indices.end();
    }
};

template <typename Derived>
Spectrum<typename Derived::Scalar> spectrum(const Eigen::MatrixBase<Derived>& K)
{
    using Scalar = typename Derived::Scalar;
    using std::abs;

    if (K.rows() != K.cols()) {
        throw ValidationError("spectrum: matrix is not square");
    }
    if (!K.allFinite()) {
        throw NumericalError("spectrum: matrix has non-finite entries");
    }

    Spectrum<Scalar> s;
    const Eigen::Index n = K.rows();
    if (n == 0) return s;

    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(K.eval());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("spectrum: eigensolver did not converge");
    }

    // Eigen returns ascending order; flip to descending.
    s.eigenvalues = solver.eigenvalues().reverse();
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();

    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax = 0;
        s.eigenvectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (s.eigenvectors(imax, j) < Scalar(0)) s.eigenvectors.col(j) *= Scalar(-1);
    }

    const Scalar scale = s.eigenvalues.cwiseAbs().maxCoeff();
    const Scalar threshold = Scalar(zero_eigenvalue_tolerance) * scale;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (scale > Scalar(0) && abs(s.eigenvalues(j)) >= threshold) {
            s.row_space_indices.push_back(j);
        } else {
            s.null_indices.push_back(j);
        }
    }
    return s;
}

} // namespace gpi
