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

#include <span>
#include <string>
#include <string_view>

namespace gpi::cosmo {

inline constexpr double speed_of_light = 299792.458; ///< km/s
inline constexpr double gly_per_gpc = 3.2616;        ///< giga light-years per gigaparsec

enum class ModelKind
{
    EdS,
    LCDM,
    MORC,
};

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

///
/// Background cosmology. Distances are in Gpc, H0 in km/s/Mpc.
///
/// - EdS: flat, matter only.
/// - LCDM: flat, omega_m + omega_l = 1.
/// - MORC: EdS kinematics with the luminosity distance corrected by the inner-product
///   perturbation h11 = D_p / a_inv, i.e. D_L = (1 + z) sqrt(1 + h11) D_p.
///
struct CosmologyModel
{
    ModelKind kind = ModelKind::EdS;
    double H0 = 70.0;
    double omega_m = 1.0;
    double omega_l = 0.0;
    double a_inv = 0.0; ///< Gpc, MORC only

    static CosmologyModel eds(double H0) { return {ModelKind::EdS, H0, 1.0, 0.0, 0.0}; }
    static CosmologyModel lcdm(double H0, double omega_m) { return {ModelKind::LCDM, H0, omega_m, 1.0 - omega_m, 0.0}; }
    static CosmologyModel morc(double H0, double a_inv) { return {ModelKind::MORC, H0, 1.0, 0.0, a_inv}; }

    /// Throws ValidationError if the parameters are out of their domain.
    void validate() const;
};

struct DistancePair
{
    double z = 0;
    double D_p = 0; ///< Gpc
    double D_L = 0; ///< Gpc
};

/// c / H0 in Gpc.
double hubble_distance(double H0);

/// EdS proper distance 2 (c/H0) (1 - 1/sqrt(1+z)), Gpc.
double proper_distance_eds(double z, double H0);

/// Flat LCDM comoving distance (c/H0) int_0^z dz' / E(z'), Gpc. Adaptive Gauss-Kronrod.
double comoving_distance_lcdm(double z, double H0, double omega_m, double omega_l);

/// Proper distance the model assigns to redshift z, Gpc.
double proper_distance(const CosmologyModel& model, double z);

double luminosity_distance(const CosmologyModel& model, double z);

DistancePair distances(const CosmologyModel& model, double z);

/// mu = 5 log10(D_L / Mpc) + 25 for D_L given in Gpc.
double distance_modulus(double D_L);

/// Inverse of distance_modulus, Gpc.
double luminosity_distance_from_modulus(double mu);

/// Regge action of a vacuum lattice, (1 / 8 pi) sum_i deficit_i * area_i.
double regge_vacuum_action(std::span<const double> hinge_areas, std::span<const double> deficit_angles);

} // namespace gpi::cosmo
