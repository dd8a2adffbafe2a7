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
#include <gpi/cosmology.hpp>
#include <gpi/error.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

namespace gpi::cosmo {

namespace {

constexpr double quadrature_tolerance = 1e-10;

void require_redshift(double z)
{
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw ValidationError("redshift must be finite and non-negative");
    }
}

} // namespace

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::EdS: return "eds";
    case ModelKind::LCDM: return "lcdm";
    case ModelKind::MORC: return "morc";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    if (name == "eds" || name == "EdS") return ModelKind::EdS;
    if (name == "lcdm" || name == "LCDM") return ModelKind::LCDM;
    if (name == "morc" || name == "MORC") return ModelKind::MORC;
    throw ValidationError("unknown model '" + std::string(name) + "' (expected eds, lcdm or morc)");
}

void CosmologyModel::validate() const
{
    if (!(H0 > 0.0) || !std::isfinite(H0)) {
        throw ValidationError("H0 must be positive");
    }
    switch (kind) {
    case ModelKind::EdS: break;
    case ModelKind::LCDM:
        if (!(omega_m >= 0.0) || !(omega_l >= 0.0)) {
            throw ValidationError("LCDM density parameters must be non-negative");
        }
        if (std::abs(omega_m + omega_l - 1.0) > 1e-9) {
            throw ValidationError("LCDM must be flat (omega_m + omega_l = 1)");
        }
        break;
    case ModelKind::MORC:
        if (!(a_inv > 0.0)) {
            throw ValidationError("MORC correction scale a_inv must be positive");
        }
        break;
    }
}

double hubble_distance(double H0)
{
    return speed_of_light / H0 / 1000.0;
}

double proper_distance_eds(double z, double H0)
{
    require_redshift(z);
    return 2.0 * hubble_distance(H0) * (1.0 - 1.0 / std::sqrt(1.0 + z));
}

double comoving_distance_lcdm(double z, double H0, double omega_m, double omega_l)
{
    require_redshift(z);
    if (z == 0.0) return 0.0;
    auto inv_e = [=](double zp) {
        const double x = 1.0 + zp;
        return 1.0 / std::sqrt(omega_m * x * x * x + omega_l);
    };
    double error = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(inv_e, 0.0, z, 15, quadrature_tolerance, &error);
    if (!std::isfinite(integral) || error > quadrature_tolerance * std::abs(integral) + 1e-300) {
        throw NumericalError("LCDM distance quadrature did not converge at z = " + std::to_string(z));
    }
    return hubble_distance(H0) * integral;
}

double proper_distance(const CosmologyModel& model, double z)
{
    model.validate();
    switch (model.kind) {
    case ModelKind::LCDM: return comoving_distance_lcdm(z, model.H0, model.omega_m, model.omega_l);
    case ModelKind::EdS:
    case ModelKind::MORC: return proper_distance_eds(z, model.H0);
    }
    return 0.0;
}

DistancePair distances(const CosmologyModel& model, double z)
{
    DistancePair d;
    d.z = z;
    d.D_p = proper_distance(model, z);
    double metric = 1.0;
    if (model.kind == ModelKind::MORC) {
        metric = std::sqrt(1.0 + d.D_p / model.a_inv);
    }
    d.D_L = (1.0 + z) * metric * d.D_p;
    return d;
}

double luminosity_distance(const CosmologyModel& model, double z)
{
    return distances(model, z).D_L;
}

double distance_modulus(double D_L)
{
    if (!(D_L > 0.0)) {
        throw ValidationError("distance modulus needs a positive luminosity distance");
    }
    return 5.0 * std::log10(D_L * 1000.0) + 25.0;
}

double luminosity_distance_from_modulus(double mu)
{
    return std::pow(10.0, (mu - 25.0) / 5.0) / 1000.0;
}

double regge_vacuum_action(std::span<const double> hinge_areas, std::span<const double> deficit_angles)
{
    if (hinge_areas.size() != deficit_angles.size()) {
        throw ValidationError("regge_vacuum_action: hinge areas and deficit angles differ in length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < hinge_areas.size(); ++i) {
        sum += deficit_angles[i] * hinge_areas[i];
    }
    return sum / (8.0 * std::numbers::pi);
}

} // namespace gpi::cosmo
