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
// Command-line front end. Every numeric value is printed with 12 significant digits.
// Exit codes: 0 success, 1 validation or numerical failure, 2 usage error.

#include <gpi/chain_complex.hpp>
#include <gpi/cosmology.hpp>
#include <gpi/error.hpp>
#include <gpi/gaussian_partition.hpp>
#include <gpi/io.hpp>
#include <gpi/oscillator.hpp>
#include <gpi/scc.hpp>
#include <gpi/supernova.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gpi;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error("cannot write '" + path + "'");
}

struct GraphInput
{
    std::string graph;
    std::string links;
    std::string out;
    double alpha = 1.0;
    double beta = 1.0;
};

void add_graph_options(CLI::App* cmd, GraphInput& in, bool need_links)
{
    cmd->add_option("graph", in.graph, "graph file")->required()->check(CLI::ExistingFile);
    if (need_links) {
        cmd->add_option("--links", in.links, "CSV link,value")->required()->check(CLI::ExistingFile);
    }
    cmd->add_option("--alpha", in.alpha, "source coupling (nonzero)");
    cmd->add_option("--beta", in.beta, "action scale (positive)");
    cmd->add_option("--out", in.out, "output file (default stdout)");
}

Actional<double> load_actional(const GraphInput& in)
{
    const auto cc = parse_graph(io::read_file(in.graph));
    const auto e = io::read_link_values(io::read_file(in.links), cc);
    if (in.alpha == 0.0) throw ValidationError("alpha must be nonzero");
    return make_actional(cc, e, in.alpha, in.beta);
}

// ---------------------------------------------------------------------------

int run_validate(const GraphInput& in, const std::string& vertices, std::uint64_t seed)
{
    // Closure failures surface from the parser with the plaquette's line number.
    const auto parsed = parse_graph(io::read_file(in.graph));
    const auto check = verify_boundary_of_boundary(parsed);
    std::cout << "∂₁∂₂ = 0: " << (check.holds ? "PASS" : "FAIL") << '\n';

    const auto comps = connected_components(parsed);
    if (comps > 1) {
        std::cerr << "warning: graph has " << comps << " connected components; the gauge null space has dimension "
                  << comps << '\n';
    }

    if (in.alpha == 0.0) throw ValidationError("alpha must be nonzero");
    std::vector<Vector<double>> fields;
    if (!vertices.empty()) {
        fields.push_back(io::read_vertex_values(io::read_file(vertices), parsed));
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            Vector<double> v(parsed.vertex_count());
            for (auto& x : v) x = u(rng);
            fields.push_back(v);
        }
    }
    const Matrix<double> K = build_K<double>(parsed, in.beta);
    const double knorm = std::max(1.0, K.cwiseAbs().rowwise().sum().maxCoeff());
    double worst = 0.0;
    bool scc_ok = true;
    for (const auto& v : fields) {
        const double res = verify_scc(parsed, v, in.alpha, in.beta);
        const double scale = std::max(1.0, v.cwiseAbs().maxCoeff()) * knorm;
        worst = std::max(worst, res / scale);
        scc_ok = scc_ok && res <= 1e-12 * scale;
    }
    std::cout << "SCC: " << (scc_ok ? "PASS" : "FAIL") << '\n';
    std::cout << "vertices,links,plaquettes,components,max_scc_residual_rel\n"
              << parsed.vertex_count() << ',' << parsed.link_count() << ',' << parsed.plaquette_count() << ','
              << comps << ',' << num(worst) << '\n';
    return check.holds && scc_ok ? exit_ok : exit_failure;
}

int run_partition(const GraphInput& in)
{
    const auto act = load_actional(in);
    const auto s = spectrum(act.K);
    const auto z = partition_function(act);

    std::ostringstream out;
    out << "quantity,mode,value\n";
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        out << "eigenvalue," << k + 1 << ',' << num(s.eigenvalues(k)) << '\n';
    }
    for (const auto& m : z.modes) out << "J_tilde," << m.mode + 1 << ',' << num(m.source) << '\n';
    for (const auto& m : z.modes) out << "log_factor," << m.mode + 1 << ',' << num(m.log_factor) << '\n';
    out << "rank,," << s.rank() << '\n';
    out << "log_Z,," << num(z.log_Z) << '\n';
    out << "Z,," << num(z.Z) << '\n';
    emit(in.out, out.str());
    return exit_ok;
}

int run_probability(const GraphInput& in, int mode, double value)
{
    const auto act = load_actional(in);
    if (mode < 1 || mode > act.K.rows()) {
        throw ValidationError("--mode must lie in 1.." + std::to_string(act.K.rows()));
    }
    const auto s = spectrum(act.K);
    const Eigen::Index k = mode - 1;
    const double p = outcome_probability(act, k, value);
    const double a = s.eigenvalues(k);
    const double jt = s.eigenvectors.col(k).dot(act.J);

    std::ostringstream out;
    out << "mode,eigenvalue,J_tilde,peak,value,probability_density\n"
        << mode << ',' << num(a) << ',' << num(jt) << ',' << num(jt / a) << ',' << num(value) << ',' << num(p) << '\n';
    emit(in.out, out.str());
    return exit_ok;
}

int run_classical(const GraphInput& in)
{
    const auto act = load_actional(in);
    const auto f = most_probable_field(act);
    const double residual = (act.K * f.Q0 - act.J).cwiseAbs().maxCoeff();

    std::ostringstream out;
    out << "vertex,Q0";
    for (Eigen::Index g = 0; g < f.gauge.cols(); ++g) out << ",gauge_" << g + 1;
    out << '\n';
    for (Eigen::Index i = 0; i < f.Q0.size(); ++i) {
        out << 'v' << i + 1 << ',' << num(f.Q0(i));
        for (Eigen::Index g = 0; g < f.gauge.cols(); ++g) out << ',' << num(f.gauge(i, g));
        out << '\n';
    }
    emit(in.out, out.str());
    std::cerr << "max |K Q0 - J| = " << num(residual) << '\n';
    return exit_ok;
}

int run_mc_check(const GraphInput& in, std::int64_t samples, std::uint64_t seed)
{
    const auto act = load_actional(in);
    const auto exact = partition_function(act);
    const auto mc = mc_oracle_partition(act, samples, seed);
    const double zscore = (mc.estimate - exact.Z) / mc.standard_error;
    const bool ok = std::abs(zscore) <= 3.0;

    std::ostringstream out;
    out << "Z_closed_form,Z_monte_carlo,standard_error,z_score,samples,seed,within_3_sigma\n"
        << num(exact.Z) << ',' << num(mc.estimate) << ',' << num(mc.standard_error) << ',' << num(zscore) << ','
        << mc.samples << ',' << seed << ',' << (ok ? "PASS" : "FAIL") << '\n';
    emit(in.out, out.str());
    return ok ? exit_ok : exit_failure;
}

int run_oscillator(const OscillatorParams<double>& p, const std::string& out_path)
{
    p.validate();
    const Matrix<double> K = oscillator_K(p);
    const Matrix<double> L = build_K(ladder_complex(p.n_time), 1.0);

    std::ostringstream out;
    for (Eigen::Index i = 0; i < K.rows(); ++i) {
        for (Eigen::Index j = 0; j < K.cols(); ++j) out << (j ? "," : "") << num(K(i, j));
        out << '\n';
    }
    emit(out_path, out.str());

    auto sign = [](double x) { return (x > 0) - (x < 0); };
    bool pattern = true;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        for (Eigen::Index j = 0; j < K.cols(); ++j) pattern = pattern && sign(K(i, j)) == sign(L(i, j));
    const double diff = (K - L).cwiseAbs().maxCoeff();

    // the report goes to stderr when the matrix is on stdout, so the CSV stays clean
    std::ostream& rep = out_path.empty() ? std::cerr : std::cout;
    rep << "ladder vertices: " << L.rows() << " (chain a: v1..v" << p.n_time << ", chain b: v" << p.n_time + 1
        << "..v" << 2 * p.n_time << ")\n";
    rep << "sign pattern matches ladder Laplacian: " << (pattern ? "yes" : "no") << '\n';
    rep << "max |K - L_ladder| = " << num(diff) << '\n';
    rep << "identical to ladder Laplacian: " << (diff == 0.0 ? "yes" : "no") << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------

std::vector<sn::SupernovaRecord> load_union2(const std::string& path)
{
    std::vector<std::string> warnings;
    auto records = sn::parse_union2(io::read_file(path), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return records;
}

sn::ResidualSpace parse_space(const std::string& s)
{
    return s == "mu" ? sn::ResidualSpace::DistanceModulus : sn::ResidualSpace::LogDistance;
}

std::string model_label(cosmo::ModelKind kind)
{
    return kind == cosmo::ModelKind::MORC ? "MORC-approx" : kind == cosmo::ModelKind::LCDM ? "LCDM" : "EdS";
}

int run_cosmo_fit(
    const std::string& model,
    const std::string& data,
    const std::string& space,
    const std::string& out_path,
    const std::string& residual_path)
{
    const auto kind = cosmo::parse_model_kind(model);
    const auto records = load_union2(data);
    sn::FitConfig cfg;
    cfg.space = parse_space(space);
    const auto fit = sn::fit_model(kind, records, cfg);

    std::ostringstream out;
    out << "parameter,value\n";
    out << "model," << model_label(kind) << '\n';
    out << "H0," << num(fit.model.H0) << '\n';
    if (kind == cosmo::ModelKind::LCDM) {
        out << "omega_m," << num(fit.model.omega_m) << '\n';
        out << "omega_l," << num(fit.model.omega_l) << '\n';
    }
    if (kind == cosmo::ModelKind::MORC) {
        out << "a_inv_gpc," << num(fit.model.a_inv) << '\n';
        out << "a_inv_gly," << num(fit.model.a_inv * cosmo::gly_per_gpc) << '\n';
    }
    out << "sse," << num(fit.sse) << '\n';
    out << "n_points," << fit.n_points << '\n';
    out << "residual_space," << sn::to_string(fit.space) << '\n';
    out << "weighting,unweighted\n";
    out << "evaluations," << fit.evaluations << '\n';
    out << "converged," << (fit.converged ? "true" : "false") << '\n';
    emit(out_path, out.str());

    if (!residual_path.empty()) {
        // residual files are always in log-distance units so `plot` can read them
        const auto rows = sn::residuals(fit.model, records, sn::ResidualSpace::LogDistance);
        emit(residual_path, io::write_residuals(rows));
    }
    return exit_ok;
}

int run_cosmo_curve(const std::string& model, const std::vector<double>& params, double zmax, int steps,
                    const std::string& out_path)
{
    const auto kind = cosmo::parse_model_kind(model);
    const auto m = sn::model_from_parameters(kind, params);
    m.validate();
    if (!(zmax > 0.0)) throw ValidationError("--zmax must be positive");
    if (steps < 1) throw ValidationError("--steps must be at least 1");

    std::ostringstream out;
    out << "z,D_p_Gpc,D_L_Gpc,mu\n";
    for (int i = 1; i <= steps; ++i) {
        const double z = zmax * i / steps;
        const auto d = cosmo::distances(m, z);
        out << num(z) << ',' << num(d.D_p) << ',' << num(d.D_L) << ',' << num(cosmo::distance_modulus(d.D_L)) << '\n';
    }
    emit(out_path, out.str());
    return exit_ok;
}

int run_cosmo_regress(const std::string& data, const std::string& out_path)
{
    const auto records = load_union2(data);
    const auto f = sn::loglog_regression(records);
    std::ostringstream out;
    out << "parameter,value\n"
        << "slope," << num(f.slope) << '\n'
        << "intercept," << num(f.intercept) << '\n'
        << "correlation," << num(f.correlation) << '\n'
        << "sse," << num(f.sse) << '\n'
        << "n_points," << f.n_points << '\n';
    emit(out_path, out.str());
    return exit_ok;
}

int run_plot(const std::string& in_path, const std::string& out_path, const std::string& title)
{
    const auto rows = io::read_residuals(io::read_file(in_path));
    emit(out_path, io::hubble_diagram_svg(rows, title));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete path-integral graphs, Gaussian partition functions and supernova distance fits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gpi 1.0.0");

    GraphInput g;
    std::string vertices;
    std::uint64_t seed = 1;
    std::int64_t samples = 1000000;
    int mode = 1;
    double value = 0.0;

    auto* validate = app.add_subcommand("validate", "check boundary-of-boundary and the self-consistency criterion");
    add_graph_options(validate, g, false);
    validate->add_option("--vertices", vertices, "CSV vertex,value to test instead of seeded random fields")
        ->check(CLI::ExistingFile);
    validate->add_option("--seed", seed, "seed for the random vertex fields");

    auto* partition = app.add_subcommand("partition", "row-space Gaussian partition function");
    add_graph_options(partition, g, true);

    auto* probability = app.add_subcommand("probability", "outcome density for one eigenmode");
    add_graph_options(probability, g, true);
    probability->add_option("--mode", mode, "1-based mode, descending eigenvalue order")->required();
    probability->add_option("--value", value, "mode amplitude q0")->required();

    auto* classical = app.add_subcommand("classical", "most probable field K Q0 = J");
    add_graph_options(classical, g, true);

    auto* mc = app.add_subcommand("mc-check", "Monte-Carlo check of the closed-form partition function");
    add_graph_options(mc, g, true);
    mc->add_option("--samples", samples, "sample count (>= 10000)");
    mc->add_option("--seed", seed, "random seed");

    OscillatorParams<double> osc{1.0, 1.0, -1.0, 1.0, 3};
    std::string osc_out;
    auto* oscillator = app.add_subcommand("oscillator", "lattice K for two coupled oscillators");
    oscillator->add_option("--n-time", osc.n_time, "time slices (>= 2)")->required();
    oscillator->add_option("--m", osc.m, "mass");
    oscillator->add_option("--k", osc.k, "spring constant");
    oscillator->add_option("--k12", osc.k12, "coupling (negative)");
    oscillator->add_option("--dt", osc.dt, "time step");
    oscillator->add_option("--out", osc_out, "matrix CSV file (default stdout)");

    auto* cosmo_cmd = app.add_subcommand("cosmo", "distance-redshift models and supernova fits");
    cosmo_cmd->require_subcommand(1);
    std::string model, data, space = "log", out, residual_out, title;
    std::vector<double> params;
    double zmax = 2.0;
    int steps = 100;

    auto* fit = cosmo_cmd->add_subcommand("fit", "least-squares fit to a supernova table");
    fit->add_option("--model", model, "eds, lcdm or morc")->required()->check(CLI::IsMember({"eds", "lcdm", "morc"}));
    fit->add_option("--data", data, "name z mu sigma table")->required()->check(CLI::ExistingFile);
    fit->add_option("--space", space, "residual space")->check(CLI::IsMember({"log", "mu"}));
    fit->add_option("--out", out, "fit report CSV (default stdout)");
    fit->add_option("--residuals", residual_out, "residuals CSV");

    auto* curve = cosmo_cmd->add_subcommand("curve", "tabulate distances");
    curve->add_option("--model", model, "eds, lcdm or morc")->required()->check(CLI::IsMember({"eds", "lcdm", "morc"}));
    curve->add_option("--params", params, "H0[,omega_m | a_inv_gpc]")->required()->delimiter(',');
    curve->add_option("--zmax", zmax, "largest redshift");
    curve->add_option("--steps", steps, "rows");
    curve->add_option("--out", out, "output CSV (default stdout)");

    auto* regress = cosmo_cmd->add_subcommand("regress", "log-log straight-line fit");
    regress->add_option("--data", data, "name z mu sigma table")->required()->check(CLI::ExistingFile);
    regress->add_option("--out", out, "output CSV (default stdout)");

    std::string plot_in;
    auto* plot = app.add_subcommand("plot", "Hubble diagram from a residuals CSV");
    plot->add_option("--in", plot_in, "residuals CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out", out, "SVG file")->required();
    plot->add_option("--title", title, "figure title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    const std::vector<std::pair<CLI::App*, std::function<int()>>> commands{
        {validate, [&] { return run_validate(g, vertices, seed); }},
        {partition, [&] { return run_partition(g); }},
        {probability, [&] { return run_probability(g, mode, value); }},
        {classical, [&] { return run_classical(g); }},
        {mc, [&] { return run_mc_check(g, samples, seed); }},
        {oscillator, [&] { return run_oscillator(osc, osc_out); }},
        {fit, [&] { return run_cosmo_fit(model, data, space, out, residual_out); }},
        {curve, [&] { return run_cosmo_curve(model, params, zmax, steps, out); }},
        {regress, [&] { return run_cosmo_regress(data, out); }},
        {plot, [&] { return run_plot(plot_in, out, title); }},
    };
    for (const auto& [cmd, run] : commands) {
        if (!*cmd) continue;
        const std::string where = cmd == fit || cmd == curve || cmd == regress ? "cosmo " + cmd->get_name() : cmd->get_name();
        try {
            return run();
        } catch (const std::exception& e) {
            std::cerr << "gpi " << where << ": " << e.what() << '\n';
            return exit_failure;
        }
    }
    return exit_usage;
}
