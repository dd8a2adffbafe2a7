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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "test_support.hpp"

#include <gpi/chain_complex.hpp>
#include <gpi/cosmology.hpp>
#include <gpi/error.hpp>
#include <gpi/gaussian_partition.hpp>
#include <gpi/io.hpp>
#include <gpi/oscillator.hpp>
#include <gpi/scc.hpp>
#include <gpi/supernova.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef GPI_UNION2_DATA
#define GPI_UNION2_DATA ""
#endif

namespace {

using namespace gpi;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Outcome
{
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------

Outcome boundary_operators()
{
    const auto t0 = Clock::now();
    const auto cc = figure3_complex();
    const IntegerMatrix d1 = boundary_1(cc);
    const IntegerMatrix d2 = boundary_2(cc);
    const IntegerMatrix dd = d1 * d2;
    const double elapsed = seconds_since(t0);

    const bool d2_ok = d2 == testing::printed_boundary_2();
    const bool d1_ok = d1 == testing::printed_boundary_1();
    const bool closed = dd.isZero() && verify_boundary_of_boundary(cc).holds;
    return {d1_ok && d2_ok && closed && elapsed < 1e-3,
            fmt("d2 7x2 exact=%d, d1 6x7 exact=%d, d1*d2 == 0 (integer)=%d, %.3g ms", d2_ok, d1_ok, closed,
                elapsed * 1e3)};
}

Outcome laplacian()
{
    const Eigen::MatrixXd K = build_K(figure3_complex(), 1.0);
    const bool exact = K == testing::printed_laplacian();
    const auto s = spectrum(K);
    const bool one_zero = s.null_indices.size() == 1;
    double spread = std::numeric_limits<double>::infinity();
    if (one_zero) {
        const Eigen::VectorXd v = s.eigenvectors.col(s.null_indices.front());
        spread = v.maxCoeff() - v.minCoeff();
    }
    return {exact && one_zero && spread < 1e-10,
            fmt("K == printed matrix=%d, zero eigenvalues=%zu, null-vector component spread=%.3g", exact,
                s.null_indices.size(), spread)};
}

Outcome scc_suite()
{
    const auto t0 = Clock::now();
    std::vector<ChainComplex> complexes{figure3_complex()};
    for (Index n = 2; n <= 8; ++n) complexes.push_back(ladder_complex(n));

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> coupling(0.25, 4.0);
    double worst_scc = 0, worst_sum = 0;
    for (const auto& cc : complexes) {
        for (int trial = 0; trial < 1000; ++trial) {
            const double alpha = coupling(rng) * (trial % 2 ? -1.0 : 1.0);
            const double beta = coupling(rng);
            const Eigen::VectorXd v = testing::random_vector(rng, cc.vertex_count(), -10, 10);
            worst_scc = std::max(worst_scc, verify_scc(cc, v, alpha, beta) / v.cwiseAbs().maxCoeff());

            const Eigen::VectorXd e = testing::random_vector(rng, cc.link_count(), -10, 10);
            const Eigen::VectorXd J = build_J(cc, e, alpha);
            worst_sum = std::max(worst_sum, std::abs(J.sum()) / e.lpNorm<1>());
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst_scc <= 1e-12 && worst_sum <= 1e-12 && elapsed < 1.0,
            fmt("%zu complexes x 1000 fields, max |Kv-(b/a)J|/|v| = %.3g, max |sum J|/|e|_1 = %.3g, %.3g s",
                complexes.size(), worst_scc, worst_sum, elapsed)};
}

/// Vertex of the parabola through three samples of f.
double parabola_vertex(const std::function<double(double)>& f, double x0, double x1, double x2)
{
    const double f0 = f(x0), f1 = f(x1), f2 = f(x2);
    const double num = (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
    const double den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
    return x1 - 0.5 * num / den;
}

Outcome partition_oracle()
{
    const auto t0 = Clock::now();
    const auto single = make_actional(testing::single_link_complex(), Eigen::VectorXd::Ones(1).eval());
    const auto fig3 = make_actional(figure3_complex(), Eigen::VectorXd::Ones(7).eval());

    std::ostringstream detail;
    bool ok = true;
    const char* names[] = {"single link", "six-vertex"};
    int which = 0;
    double worst_mass = 0, worst_peak = 0;
    for (const auto* act : {&single, &fig3}) {
        const auto exact = partition_function(*act);
        const auto mc = mc_oracle_partition(*act, 1000000, 0x5eed);
        const double z = (mc.estimate - exact.Z) / mc.standard_error;
        ok = ok && std::abs(z) <= 3.0;
        detail << names[which++] << ": Z=" << fmt("%.6g", exact.Z) << " MC=" << fmt("%.6g", mc.estimate)
               << fmt(" (%.2f sigma); ", z);

        const auto s = spectrum(act->K);
        for (auto k : s.row_space_indices) {
            auto density = [&](double q) { return outcome_probability(*act, k, q); };
            double err = 0;
            const double inf = std::numeric_limits<double>::infinity();
            const double mass =
                boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, -inf, inf, 20, 1e-13, &err);
            const double peak = parabola_vertex([&](double q) { return std::log(density(q)); }, -1.0, 0.0, 1.0);
            const double expected = s.eigenvectors.col(k).dot(act->J) / s.eigenvalues(k);
            worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
            worst_peak = std::max(worst_peak, std::abs(peak - expected));
        }
    }
    const double elapsed = seconds_since(t0);
    ok = ok && worst_mass <= 1e-9 && worst_peak <= 1e-9 && elapsed < 30.0;
    detail << fmt("max |mass-1| = %.3g, max |peak - J/a| = %.3g, %.3g s", worst_mass, worst_peak, elapsed);
    return {ok, detail.str()};
}

/// Lattice action of two coupled oscillators coded straight from the continuum Lagrangian.
double lattice_action(const OscillatorParams<double>& p, const Eigen::VectorXd& Q, const Eigen::VectorXd& j)
{
    const Index n = p.n_time;
    double s = 0;
    for (Index t = 0; t + 1 < n; ++t) {
        for (Index osc = 0; osc < 2; ++osc) {
            const double vel = (Q(osc * n + t + 1) - Q(osc * n + t)) / p.dt;
            s += 0.5 * p.m * vel * vel * p.dt;
        }
    }
    for (Index t = 0; t < n; ++t) {
        const double q1 = Q(t), q2 = Q(n + t);
        const double V = 0.5 * p.k * q1 * q1 + 0.5 * p.k * q2 * q2 + p.k12 * q1 * q2;
        s += V * p.dt - (j(t) * q1 + j(n + t) * q2) * p.dt;
    }
    return s;
}

Outcome oscillator_correspondence()
{
    bool exact = true;
    for (Index n = 2; n <= 8; ++n) {
        const Eigen::MatrixXd L = build_K(ladder_complex(n), 1.0);
        for (double dt : {1.0, 0.5, 2.0, 0.25}) {
            // m/dt = k dt = -k12 dt = 1
            const OscillatorParams<double> p{dt, 1.0 / dt, -1.0 / dt, dt, n};
            exact = exact && oscillator_K(p) == L;
        }
    }

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        OscillatorParams<double> p{u(rng), u(rng), 0.0, u(rng), 2 + trial % 12};
        p.k12 = -p.k * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
        const Eigen::VectorXd Q = testing::random_vector(rng, 2 * p.n_time, -3, 3);
        const Eigen::VectorXd j = testing::random_vector(rng, 2 * p.n_time, -1, 1);
        const double quad = 0.5 * Q.dot(oscillator_K(p) * Q) - (j * p.dt).dot(Q);
        const double ref = lattice_action(p, Q, j);
        worst = std::max(worst, std::abs(quad - ref) / std::abs(ref));
    }
    return {exact && worst <= 1e-10,
            fmt("unit-ratio K == ladder Laplacian for n=2..8 (4 step sizes)=%d, max rel action error = %.3g", exact,
                worst)};
}

// ---------------------------------------------------------------------------

struct Union2
{
    std::vector<sn::SupernovaRecord> records;
    std::string error;
};

Union2 load_union2()
{
    const std::filesystem::path path = GPI_UNION2_DATA;
    Union2 u;
    if (path.empty() || !std::filesystem::exists(path)) {
        u.error = "Union2 table not found at '" + path.string() + "' (configure with -DGPI_UNION2_DATA=<file>)";
        return u;
    }
    try {
        u.records = sn::parse_union2(io::read_file(path));
    } catch (const std::exception& e) {
        u.error = e.what();
    }
    return u;
}

Outcome union2_regression(const Union2& data)
{
    if (!data.error.empty()) return {false, data.error};
    const auto t0 = Clock::now();
    const auto f = sn::loglog_regression(data.records);
    const double elapsed = seconds_since(t0);
    return {std::abs(f.correlation - 0.9955) <= 0.002 && std::abs(f.sse - 1.95) <= 0.15 && elapsed < 1.0,
            fmt("N=%zu, r = %.5f (0.9955 +/- 0.002), SSE = %.4f (1.95 +/- 0.15), slope = %.4f, %.3g s", f.n_points,
                f.correlation, f.sse, f.slope, elapsed)};
}

Outcome union2_eds_lcdm(const Union2& data, sn::FitResult& eds_out)
{
    if (!data.error.empty()) return {false, data.error};
    auto t0 = Clock::now();
    const auto eds = sn::fit_model(cosmo::ModelKind::EdS, data.records);
    const double t_eds = seconds_since(t0);
    t0 = Clock::now();
    const auto lcdm = sn::fit_model(cosmo::ModelKind::LCDM, data.records);
    const double t_lcdm = seconds_since(t0);
    eds_out = eds;

    const bool eds_ok = std::abs(eds.model.H0 - 60.9) <= 1.0 && std::abs(eds.sse - 2.68) <= 0.15 && t_eds < 60;
    const bool lcdm_ok = std::abs(lcdm.model.H0 - 69.2) <= 1.0 && std::abs(lcdm.model.omega_m - 0.29) <= 0.03 &&
                         std::abs(lcdm.sse - 1.79) <= 0.10 && t_lcdm < 60;
    return {eds_ok && lcdm_ok,
            fmt("EdS H0 = %.3f (60.9 +/- 1), SSE = %.4f (2.68 +/- 0.15), %.2g s; LCDM H0 = %.3f (69.2 +/- 1), "
                "Om = %.4f (0.29 +/- 0.03), SSE = %.4f (1.79 +/- 0.10), %.2g s",
                eds.model.H0, eds.sse, t_eds, lcdm.model.H0, lcdm.model.omega_m, lcdm.sse, t_lcdm)};
}

Outcome union2_morc(const Union2& data, const sn::FitResult& eds)
{
    if (!data.error.empty()) return {false, data.error};
    const auto morc = sn::fit_model(cosmo::ModelKind::MORC, data.records);
    const bool better = morc.sse < eds.sse;
    const bool strong = std::abs(morc.sse - 1.77) <= 0.15;
    return {better,
            fmt("SSE = %.4f vs EdS %.4f; diagnostic: H0 = %.3f (73.9), A_inv = %.4g Gpc = %.4g Gly (8.38); "
                "SSE within 1.77 +/- 0.15: %s",
                morc.sse, eds.sse, morc.model.H0, morc.model.a_inv, morc.model.a_inv * cosmo::gly_per_gpc,
                strong ? "yes" : "no")};
}

Outcome refit_closure()
{
    using cosmo::CosmologyModel;
    const std::vector<CosmologyModel> truth{CosmologyModel::eds(60.9), CosmologyModel::lcdm(69.2, 0.29),
                                           CosmologyModel::morc(73.9, 8.38 / cosmo::gly_per_gpc)};
    double worst = 0;
    std::ostringstream detail;
    for (const auto& m : truth) {
        std::vector<sn::SupernovaRecord> records;
        const int n = 557;
        for (int i = 0; i < n; ++i) {
            const double z = 0.015 * std::pow(1.4 / 0.015, double(i) / (n - 1));
            records.push_back({"syn" + std::to_string(i), z,
                               cosmo::distance_modulus(cosmo::luminosity_distance(m, z)), 0.1});
        }
        const auto fit = sn::fit_model(m.kind, records);
        const auto want = sn::parameters_of(m);
        const auto got = sn::parameters_of(fit.model);
        double rel = 0;
        for (std::size_t k = 0; k < want.size(); ++k) rel = std::max(rel, std::abs(got[k] / want[k] - 1.0));
        worst = std::max(worst, rel);
        detail << cosmo::to_string(m.kind) << fmt(" %.2g; ", rel);
    }
    detail << fmt("max relative parameter error = %.3g (<= 1e-3)", worst);
    return {worst <= 1e-3, detail.str()};
}

} // namespace

int main()
{
    int failed = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    };

    report(1, "boundary operators", boundary_operators);
    report(2, "graph Laplacian", laplacian);
    report(3, "self-consistency criterion", scc_suite);
    report(4, "partition function oracle", partition_oracle);
    report(5, "oscillator correspondence", oscillator_correspondence);

    const auto union2 = load_union2();
    sn::FitResult eds;
    report(6, "Union2 log-log regression", [&] { return union2_regression(union2); });
    report(7, "Union2 EdS and LCDM fits", [&] { return union2_eds_lcdm(union2, eds); });
    report(8, "Union2 MORC-approx fit", [&] { return union2_morc(union2, eds); });
    report(9, "generate-and-refit closure", refit_closure);

    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
