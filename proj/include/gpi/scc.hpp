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

#include <gpi/chain_complex.hpp>
#include <gpi/error.hpp>
#include <gpi/spectrum.hpp>

#include <Eigen/Dense>

#include <string>

namespace gpi {

///
/// The actional K/2 + J: difference matrix K, source vector J and the scale factors they
/// were built with (K = beta * d1 * d1^T, J = alpha * d1 * e).
///
template <typename Scalar = double>
struct Actional
{
    Matrix<Scalar> K;
    Vector<Scalar> J;
    Scalar alpha = 1;
    Scalar beta = 1;
};

/// beta * d1 * d1^T, the (weighted) graph Laplacian of the link structure.
template <typename Scalar = double>
Matrix<Scalar> build_K(const ChainComplex& cc, Scalar beta = Scalar(1))
{
    if (!(beta > Scalar(0))) {
        throw ValidationError("build_K: beta must be positive");
    }
    const Matrix<Scalar> d1 = boundary_1(cc).cast<Scalar>();
    return beta * (d1 * d1.transpose());
}

/// alpha * d1 * e. Components sum to zero for every e.
template <typename Derived>
Vector<typename Derived::Scalar> build_J(
    const ChainComplex& cc,
    const Eigen::MatrixBase<Derived>& e,
    typename Derived::Scalar alpha = 1)
{
    using Scalar = typename Derived::Scalar;
    if (e.size() != cc.link_count()) {
        throw ValidationError(
            "build_J: expected " + std::to_string(cc.link_count()) + " link values, got " +
            std::to_string(e.size()));
    }
    return alpha * (boundary_1(cc).cast<Scalar>() * e);
}

/// d1^T * v: each link gets head-vertex value minus tail-vertex value.
template <typename Derived>
Vector<typename Derived::Scalar> link_values_from_vertices(
    const ChainComplex& cc,
    const Eigen::MatrixBase<Derived>& v)
{
    using Scalar = typename Derived::Scalar;
    if (v.size() != cc.vertex_count()) {
        throw ValidationError(
            "link_values_from_vertices: expected " + std::to_string(cc.vertex_count()) +
            " vertex values, got " + std::to_string(v.size()));
    }
    return boundary_1(cc).cast<Scalar>().transpose() * v;
}

///
/// Max-norm residual of the self-consistency identity K v = (beta/alpha) J with
/// J = alpha d1 (d1^T v). Zero analytically; round-off sized in practice.
///
template <typename Derived>
typename Derived::Scalar verify_scc(
    const ChainComplex& cc,
    const Eigen::MatrixBase<Derived>& v,
    typename Derived::Scalar alpha = 1,
    typename Derived::Scalar beta = 1)
{
    using Scalar = typename Derived::Scalar;
    if (alpha == Scalar(0)) {
        throw ValidationError("verify_scc: alpha must be nonzero");
    }
    const Matrix<Scalar> K = build_K<Scalar>(cc, beta);
    const Vector<Scalar> J = build_J(cc, link_values_from_vertices(cc, v), alpha);
    const Vector<Scalar> lhs = K * v;
    if (lhs.size() == 0) return Scalar(0);
    return (lhs - (beta / alpha) * J).cwiseAbs().maxCoeff();
}

/// Orthonormal basis (as columns) of the zero-eigenvalue eigenspace of a symmetric PSD matrix.
template <typename Derived>
Matrix<typename Derived::Scalar> gauge_null_space(const Eigen::MatrixBase<Derived>& K)
{
    using Scalar = typename Derived::Scalar;
    const auto s = spectrum(K);
    Matrix<Scalar> basis(K.rows(), static_cast<Eigen::Index>(s.null_indices.size()));
    for (std::size_t i = 0; i < s.null_indices.size(); ++i) {
        basis.col(static_cast<Eigen::Index>(i)) = s.eigenvectors.col(s.null_indices[i]);
    }
    return basis;
}

template <typename Derived>
Actional<typename Derived::Scalar> make_actional(
    const ChainComplex& cc,
    const Eigen::MatrixBase<Derived>& e,
    typename Derived::Scalar alpha = 1,
    typename Derived::Scalar beta = 1)
{
    using Scalar = typename Derived::Scalar;
    return Actional<Scalar>{build_K<Scalar>(cc, beta), build_J(cc, e, alpha), alpha, beta};
}

} // namespace gpi
