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
#include <gpi/scc.hpp>
#include <gpi/spectrum.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace gpi {

/// Tolerance on |<J, n>| / ||J|| for J to count as lying in the row space of K.
inline constexpr double row_space_tolerance = 1e-10;

template <typename Scalar = double>
struct ModeFactor
{
    Eigen::Index mode = 0; ///< index into the spectrum (descending eigenvalue order)
    Scalar eigenvalue = 0;
    Scalar source = 0;     ///< component of J along this eigenvector
    Scalar log_factor = 0; ///< log of sqrt(2 pi / a) * exp(source^2 / (2 a))
};

template <typename Scalar = double>
struct PartitionResult
{
    Scalar Z = 0;
    Scalar log_Z = 0;
    std::vector<ModeFactor<Scalar>> modes;
};

template <typename Scalar = double>
struct ClassicalField
{
    Vector<Scalar> Q0;        ///< minimum-norm solution of K Q0 = J
    Matrix<Scalar> gauge;     ///< Q0 + gauge * c solves the same system for any c
};

template <typename Scalar = double>
struct McEstimate
{
    Scalar estimate = 0;
    Scalar standard_error = 0;
    std::int64_t samples = 0;
};

namespace detail {

template <typename Scalar>
void require_valid(const Actional<Scalar>& act, const Spectrum<Scalar>& s)
{
    using std::abs;
    if (act.K.rows() != act.K.cols() || act.J.size() != act.K.rows()) {
        throw ValidationError("actional: K and J dimensions disagree");
    }
    const Scalar jnorm = act.J.norm();
    for (auto n : s.null_indices) {
        const Scalar overlap = abs(s.eigenvectors.col(n).dot(act.J));
        if (overlap > Scalar(row_space_tolerance) * jnorm) {
            throw ValidationError(
                "actional: source J has a component along the null space of K "
                "(J is not in the row space; inconsistent source)");
        }
    }
    for (auto j : s.row_space_indices) {
        if (!(s.eigenvalues(j) > Scalar(0))) {
            throw ValidationError("actional: K has a nonpositive row-space eigenvalue");
        }
    }
}

} // namespace detail

/// Row-space-restricted Euclidean Gaussian partition function, accumulated in log space.
template <typename Scalar>
PartitionResult<Scalar> partition_function(const Actional<Scalar>& act)
{
    using std::exp;
    using std::log;
    const auto s = spectrum(act.K);
    detail::require_valid(act, s);

    const Vector<Scalar> source = s.eigenvectors.transpose() * act.J;
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

    PartitionResult<Scalar> r;
    for (auto j : s.row_space_indices) {
        const Scalar a = s.eigenvalues(j);
        const Scalar jt = source(j);
        const Scalar lf = Scalar(0.5) * log(two_pi / a) + jt * jt / (Scalar(2) * a);
        r.modes.push_back({j, a, jt, lf});
        r.log_Z += lf;
    }
    r.Z = exp(r.log_Z);
    return r;
}

/// Same quantity as partition_function().Z evaluated as the literal product formula.
template <typename Scalar>
Scalar partition_function_direct(const Actional<Scalar>& act)
{
    using std::exp;
    using std::pow;
    using std::sqrt;
    const auto s = spectrum(act.K);
    detail::require_valid(act, s);

    const Vector<Scalar> source = s.eigenvectors.transpose() * act.J;
    Scalar prod_a = 1;
    Scalar prod_exp = 1;
    for (auto j : s.row_space_indices) {
        prod_a *= s.eigenvalues(j);
        prod_exp *= exp(source(j) * source(j) / (Scalar(2) * s.eigenvalues(j)));
    }
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    return sqrt(pow(two_pi, Scalar(s.rank())) / prod_a) * prod_exp;
}

///
/// The unrestricted Gaussian integral over all N vertex coordinates,
/// sqrt((2 pi)^N / det K) * exp(J K^-1 J / 2).
///
/// Only defined for nonsingular K. A graph Laplacian always has the constant vector in its
/// null space, so for K built from a chain complex this throws; use partition_function.
///
template <typename Scalar>
PartitionResult<Scalar> unrestricted_partition_function(const Actional<Scalar>& act)
{
    const auto s = spectrum(act.K);
    if (!s.null_indices.empty()) {
        throw NumericalError(
            "unrestricted partition function: K is singular (null space of dimension " +
            std::to_string(s.null_indices.size()) + "); restrict to the row space instead");
    }
    return partition_function(act);
}

///
/// Probability density that eigenmode k takes the value q0:
/// sqrt(a_k / 2 pi) exp(-a_k q0^2 / 2 + J_k q0 - J_k^2 / (2 a_k)).
///
/// Modes are indexed in the descending-eigenvalue order of spectrum(K). The density is
/// defined per eigenmode; for degenerate eigenvalues the individual mode shape (and hence
/// the vertex-space meaning of q0) depends on the chosen basis of the eigenspace.
///
template <typename Scalar>
Scalar outcome_probability(const Actional<Scalar>& act, Eigen::Index k, Scalar q0)
{
    using std::exp;
    using std::sqrt;
    const auto s = spectrum(act.K);
    detail::require_valid(act, s);
    if (k < 0 || k >= act.K.rows()) {
        throw ValidationError("outcome_probability: mode index out of range");
    }
    if (s.is_null_mode(k)) {
        throw ValidationError("outcome_probability: mode is a gauge (null-space) mode");
    }
    const Scalar a = s.eigenvalues(k);
    const Scalar jt = s.eigenvectors.col(k).dot(act.J);
    const Scalar d = q0 - jt / a;
    return sqrt(a / (Scalar(2) * std::numbers::pi_v<Scalar>)) * exp(Scalar(-0.5) * a * d * d);
}

/// Eigenvector of mode k in vertex coordinates.
template <typename Scalar>
Vector<Scalar> mode_shape(const Actional<Scalar>& act, Eigen::Index k)
{
    const auto s = spectrum(act.K);
    if (k < 0 || k >= act.K.rows()) {
        throw ValidationError("mode_shape: mode index out of range");
    }
    return s.eigenvectors.col(k);
}

/// Most probable field: mode-wise J_k / a_k on the row space, zero along the gauge modes.
template <typename Scalar>
ClassicalField<Scalar> most_probable_field(const Actional<Scalar>& act)
{
    const auto s = spectrum(act.K);
    detail::require_valid(act, s);

    ClassicalField<Scalar> f;
    f.Q0 = Vector<Scalar>::Zero(act.K.rows());
    for (auto j : s.row_space_indices) {
        const auto v = s.eigenvectors.col(j);
        f.Q0 += (v.dot(act.J) / s.eigenvalues(j)) * v;
    }
    f.gauge.resize(act.K.rows(), static_cast<Eigen::Index>(s.null_indices.size()));
    for (std::size_t i = 0; i < s.null_indices.size(); ++i) {
        f.gauge.col(static_cast<Eigen::Index>(i)) = s.eigenvectors.col(s.null_indices[i]);
    }
    return f;
}

///
/// Importance-sampled Monte-Carlo estimate of the row-space Gaussian integral.
///
/// Row-space coordinates are drawn from N(0, widen^2 / a_j) and the integrand is evaluated
/// through the vertex-space action exp(-Q.K.Q/2 + J.Q). Samples are split over a fixed number
/// of substreams seeded from (seed, stream), so the result does not depend on how many
/// threads run them.
///
template <typename Scalar>
McEstimate<Scalar> mc_oracle_partition(const Actional<Scalar>& act, std::int64_t samples, std::uint64_t seed)
{
    using std::exp;
    using std::log;
    using std::sqrt;
    if (samples < 10000) {
        throw ValidationError("mc_oracle_partition: at least 10^4 samples required");
    }
    const auto s = spectrum(act.K);
    detail::require_valid(act, s);

    constexpr int streams = 16;
    const Scalar widen = Scalar(1.5);
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Eigen::Index r = s.rank();

    Matrix<Scalar> basis(act.K.rows(), r);
    Vector<Scalar> sigma(r);
    Scalar log_norm = 0; // -log of the proposal density at its mode; keeps weights O(1)
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto j = s.row_space_indices[static_cast<std::size_t>(i)];
        basis.col(i) = s.eigenvectors.col(j);
        sigma(i) = widen / sqrt(s.eigenvalues(j));
        log_norm += Scalar(0.5) * log(two_pi) + log(sigma(i));
    }

    struct Partial
    {
        Scalar sum = 0;
        Scalar sum_sq = 0;
    };
    auto run_stream = [&](int stream, std::int64_t count) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, 1.0);
        Partial p;
        Vector<Scalar> q(r);
        for (std::int64_t n = 0; n < count; ++n) {
            Scalar log_proposal_ratio = 0; // log proposal(q) + log_norm
            for (Eigen::Index i = 0; i < r; ++i) {
                const Scalar u = Scalar(normal(rng));
                q(i) = sigma(i) * u;
                log_proposal_ratio -= Scalar(0.5) * u * u;
            }
            const Vector<Scalar> Q = basis * q;
            const Scalar action = Scalar(0.5) * Q.dot(act.K * Q) - act.J.dot(Q);
            const Scalar w = exp(-action - log_proposal_ratio);
            p.sum += w;
            p.sum_sq += w * w;
        }
        return p;
    };

    std::vector<std::future<Partial>> futures;
    for (int c = 0; c < streams; ++c) {
        const std::int64_t count = samples / streams + (c < samples % streams ? 1 : 0);
        futures.push_back(std::async(std::launch::async, run_stream, c, count));
    }
    Scalar sum = 0, sum_sq = 0;
    for (auto& f : futures) {
        const auto p = f.get();
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const Scalar n = Scalar(samples);
    const Scalar mean = sum / n;
    const Scalar var = (sum_sq / n - mean * mean) * n / (n - Scalar(1));
    const Scalar scale = exp(log_norm);

    McEstimate<Scalar> est;
    est.estimate = mean * scale;
    est.standard_error = sqrt(var > Scalar(0) ? var / n : Scalar(0)) * scale;
    est.samples = samples;
    return est;
}

} // namespace gpi
