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

#include <gpi/cosmology.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpi::sn {

struct SupernovaRecord
{
    std::string name;
    double z = 0;        ///< redshift, > 0
    double mu = 0;       ///< distance modulus, mag
    double sigma_mu = 0; ///< mag, carried along but not used for weighting
};

/// Parse whitespace-separated `name z mu sigma_mu [extra...]` rows; `#` lines are comments.
/// Non-fatal oddities (extra columns, implausible mu) are appended to `warnings` if given.
std::vector<SupernovaRecord> parse_union2(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// log10(D_L / Gpc) implied by the record's distance modulus.
double log_distance(const SupernovaRecord& record);

/// Space in which residuals are squared and summed.
enum class ResidualSpace
{
    LogDistance,    ///< log10(D_L / Gpc)
    DistanceModulus ///< mu, magnitudes (5x the log-distance residual)
};

std::string to_string(ResidualSpace space);

struct ResidualRow
{
    std::string name;
    double z = 0;
    double observed = 0;
    double predicted = 0;
    double residual = 0; ///< observed - predicted
};

std::vector<ResidualRow> residuals(
    const cosmo::CosmologyModel& model,
    std::span<const SupernovaRecord> records,
    ResidualSpace space = ResidualSpace::LogDistance);

/// Unweighted sum of squared residuals.
double model_sse(
    const cosmo::CosmologyModel& model,
    std::span<const SupernovaRecord> records,
    ResidualSpace space = ResidualSpace::LogDistance);

struct ParameterBound
{
    std::string name;
    double lo = 0;
    double hi = 0;
    bool log_scale = false; ///< grid and simplex work in log(parameter)
};

/// Box for the free parameters of a model kind, in the order of parameters_of().
std::vector<ParameterBound> default_bounds(cosmo::ModelKind kind);

/// Free parameters: EdS (H0), LCDM (H0, omega_m), MORC (H0, a_inv).
std::vector<double> parameters_of(const cosmo::CosmologyModel& model);
cosmo::CosmologyModel model_from_parameters(cosmo::ModelKind kind, std::span<const double> params);

struct FitConfig
{
    int grid_points = 10;          ///< per parameter, seeds the simplex
    double rel_tol = 1e-6;         ///< simplex spread, in box-normalized [0, 1] units
    int max_evaluations = 20000;
    ResidualSpace space = ResidualSpace::LogDistance;
    std::optional<std::vector<double>> initial; ///< skip the grid and start here
};

struct FitResult
{
    cosmo::CosmologyModel model;
    double sse = 0;
    std::size_t n_points = 0;
    int evaluations = 0;
    bool converged = false;
    ResidualSpace space = ResidualSpace::LogDistance;
};

/// Grid-seeded, box-constrained Nelder-Mead minimization of model_sse.
FitResult fit_model(
    cosmo::ModelKind kind,
    std::span<const SupernovaRecord> records,
    const std::vector<ParameterBound>& bounds,
    const FitConfig& config = {});

inline FitResult fit_model(cosmo::ModelKind kind, std::span<const SupernovaRecord> records, const FitConfig& config = {})
{
    return fit_model(kind, records, default_bounds(kind), config);
}

struct LineFit
{
    double slope = 0;
    double intercept = 0;
    double correlation = 0;
    double sse = 0;
    std::size_t n_points = 0;
};

/// Ordinary least squares of log10(D_L / Gpc) on log10(z).
LineFit loglog_regression(std::span<const SupernovaRecord> records);

} // namespace gpi::sn
