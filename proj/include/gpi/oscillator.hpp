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

#include <cmath>

namespace gpi {

///
/// Two identical oscillators coupled by a spring, sampled on n_time lattice points each.
/// Spring picture: outer springs k1 = k2 = k + k12, coupling spring k3 = -k12.
///
template <typename Scalar = double>
struct OscillatorParams
{
    Scalar m = 1;
    Scalar k = 1;
    Scalar k12 = -1;
    Scalar dt = 1;
    Eigen::Index n_time = 3;

    void validate() const
    {
        using std::abs;
        if (!(m > Scalar(0))) throw ValidationError("oscillator: mass must be positive");
        if (!(k > Scalar(0))) throw ValidationError("oscillator: k must be positive");
        if (!(k12 < Scalar(0))) throw ValidationError("oscillator: k12 must be negative");
        if (!(dt > Scalar(0))) throw ValidationError("oscillator: dt must be positive");
        if (n_time < 2) throw ValidationError("oscillator: n_time must be at least 2");
        if (k < abs(k12)) {
            throw ValidationError("oscillator: k must be at least |k12| (outer springs k1 = k + k12 >= 0)");
        }
    }
};

/// V(q1, q2) = k q1^2 / 2 + k q2^2 / 2 + k12 q1 q2.
template <typename Scalar>
Scalar oscillator_potential(Scalar q1, Scalar q2, const OscillatorParams<Scalar>& p)
{
    return Scalar(0.5) * p.k * q1 * q1 + Scalar(0.5) * p.k * q2 * q2 + p.k12 * q1 * q2;
}

///
/// Difference matrix of the Euclidean lattice action for the coupled pair, 2 n_time square.
/// Vertices 0..n-1 belong to oscillator 1, n..2n-1 to oscillator 2 (same time order).
/// Free temporal endpoints: diagonal m/dt + k dt at the ends, 2m/dt + k dt inside.
///
template <typename Scalar>
Matrix<Scalar> oscillator_K(const OscillatorParams<Scalar>& p)
{
    p.validate();
    const Eigen::Index n = p.n_time;
    const Scalar kin = p.m / p.dt;
    Matrix<Scalar> K = Matrix<Scalar>::Zero(2 * n, 2 * n);
    for (Eigen::Index osc = 0; osc < 2; ++osc) {
        const Eigen::Index o = osc * n;
        for (Eigen::Index t = 0; t < n; ++t) {
            const bool end = t == 0 || t == n - 1;
            K(o + t, o + t) = (end ? kin : Scalar(2) * kin) + p.k * p.dt;
            if (t + 1 < n) {
                K(o + t, o + t + 1) = -kin;
                K(o + t + 1, o + t) = -kin;
            }
        }
    }
    for (Eigen::Index t = 0; t < n; ++t) {
        K(t, n + t) = p.k12 * p.dt;
        K(n + t, t) = p.k12 * p.dt;
    }
    return K;
}

///
/// Two parallel time chains a_1..a_n and b_1..b_n joined by rungs a_t -> b_t, with one square
/// plaquette per time step oriented as +rung_t +b_t->b_{t+1} -rung_{t+1} -a_t->a_{t+1}.
/// Link order: chain a, chain b, rungs. At n_time = 3 this is the six-vertex example graph
/// up to a relabeling of links.
///
ChainComplex ladder_complex(Eigen::Index n_time);

} // namespace gpi
