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
#include <gpi/error.hpp>
#include <gpi/nelder_mead.hpp>
#include <gpi/supernova.hpp>

#include <charconv>
#include <cmath>
#include <limits>

namespace gpi::sn {

namespace {

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

bool parse_double(std::string_view s, double& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

/// Pairwise summation; result independent of how the terms were produced.
double pairwise_sum(std::span<const double> x)
{
    if (x.size() <= 8) {
        double s = 0;
        for (double v : x) s += v;
        return s;
    }
    const auto half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double to_working(const ParameterBound& b, double x)
{
    return b.log_scale ? (std::log(x) - std::log(b.lo)) / (std::log(b.hi) - std::log(b.lo)) : (x - b.lo) / (b.hi - b.lo);
}

double from_working(const ParameterBound& b, double u)
{
    return b.log_scale ? std::exp(std::log(b.lo) + u * (std::log(b.hi) - std::log(b.lo))) : b.lo + u * (b.hi - b.lo);
}

} // namespace

std::vector<SupernovaRecord> parse_union2(std::string_view text, std::vector<std::string>* warnings)
{
    std::vector<SupernovaRecord> records;
    std::size_t extra_columns = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto tok = split_ws(line);
        if (tok.empty() || tok[0].front() == '#') continue;
        if (tok.size() < 4) {
            throw ParseError(line_no, "expected 'name z mu sigma_mu', got " + std::to_string(tok.size()) + " columns");
        }
        SupernovaRecord r;
        r.name = std::string(tok[0]);
        if (!parse_double(tok[1], r.z) || !parse_double(tok[2], r.mu) || !parse_double(tok[3], r.sigma_mu)) {
            throw ParseError(line_no, "non-numeric redshift, modulus or uncertainty");
        }
        if (!(r.z > 0.0)) {
            throw ValidationError("line " + std::to_string(line_no) + ": redshift must be positive");
        }
        if (r.sigma_mu < 0.0) {
            throw ValidationError("line " + std::to_string(line_no) + ": negative modulus uncertainty");
        }
        if (tok.size() > 4) ++extra_columns;
        if (warnings && !(r.mu > 10.0 && r.mu < 60.0)) {
            warnings->push_back("line " + std::to_string(line_no) + ": implausible distance modulus for " + r.name);
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) {
        throw ValidationError("empty supernova dataset");
    }
    if (warnings && extra_columns) {
        warnings->push_back(std::to_string(extra_columns) + " rows carry extra trailing columns (ignored)");
    }
    return records;
}

double log_distance(const SupernovaRecord& record)
{
    return (record.mu - 25.0) / 5.0 - 3.0;
}

std::string to_string(ResidualSpace space)
{
    return space == ResidualSpace::LogDistance ? "log10_DL_Gpc" : "distance_modulus";
}

std::vector<ResidualRow> residuals(
    const cosmo::CosmologyModel& model,
    std::span<const SupernovaRecord> records,
    ResidualSpace space)
{
    model.validate();
    std::vector<ResidualRow> rows;
    rows.reserve(records.size());
    for (const auto& r : records) {
        const double dl = cosmo::luminosity_distance(model, r.z);
        ResidualRow row{r.name, r.z, 0, 0, 0};
        if (space == ResidualSpace::LogDistance) {
            row.observed = log_distance(r);
            row.predicted = std::log10(dl);
        } else {
            row.observed = r.mu;
            row.predicted = cosmo::distance_modulus(dl);
        }
        row.residual = row.observed - row.predicted;
        rows.push_back(std::move(row));
    }
    return rows;
}

double model_sse(const cosmo::CosmologyModel& model, std::span<const SupernovaRecord> records, ResidualSpace space)
{
    if (records.empty()) {
        throw ValidationError("model_sse: no records");
    }
    const auto rows = residuals(model, records, space);
    std::vector<double> sq(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) sq[i] = rows[i].residual * rows[i].residual;
    return pairwise_sum(sq);
}

std::vector<ParameterBound> default_bounds(cosmo::ModelKind kind)
{
    const ParameterBound h0{"H0", 40.0, 100.0, false};
    switch (kind) {
    case cosmo::ModelKind::EdS: return {h0};
    case cosmo::ModelKind::LCDM: return {h0, {"omega_m", 0.0, 1.0, false}};
    case cosmo::ModelKind::MORC: return {h0, {"a_inv", 0.1, 1000.0, true}};
    }
    return {};
}

std::vector<double> parameters_of(const cosmo::CosmologyModel& model)
{
    switch (model.kind) {
    case cosmo::ModelKind::EdS: return {model.H0};
    case cosmo::ModelKind::LCDM: return {model.H0, model.omega_m};
    case cosmo::ModelKind::MORC: return {model.H0, model.a_inv};
    }
    return {};
}

cosmo::CosmologyModel model_from_parameters(cosmo::ModelKind kind, std::span<const double> p)
{
    const std::size_t expected = kind == cosmo::ModelKind::EdS ? 1 : 2;
    if (p.size() != expected) {
        throw ValidationError("model " + cosmo::to_string(kind) + " takes " + std::to_string(expected) + " parameters");
    }
    switch (kind) {
    case cosmo::ModelKind::EdS: return cosmo::CosmologyModel::eds(p[0]);
    case cosmo::ModelKind::LCDM: return cosmo::CosmologyModel::lcdm(p[0], p[1]);
    case cosmo::ModelKind::MORC: return cosmo::CosmologyModel::morc(p[0], p[1]);
    }
    return {};
}

FitResult fit_model(
    cosmo::ModelKind kind,
    std::span<const SupernovaRecord> records,
    const std::vector<ParameterBound>& bounds,
    const FitConfig& config)
{
    if (records.empty()) throw ValidationError("fit_model: no records");
    const std::size_t dim = kind == cosmo::ModelKind::EdS ? 1 : 2;
    if (bounds.size() != dim) throw ValidationError("fit_model: wrong number of parameter bounds");
    for (const auto& b : bounds) {
        if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi) || (b.log_scale && !(b.lo > 0.0))) {
            throw ValidationError("fit_model: invalid bounds for " + b.name);
        }
    }
    if (config.grid_points < 2) throw ValidationError("fit_model: grid needs at least 2 points per parameter");

    int evaluations = 0;
    std::vector<double> params(dim);
    auto objective = [&](const Eigen::VectorXd& u) {
        ++evaluations;
        for (std::size_t i = 0; i < dim; ++i) params[i] = from_working(bounds[i], u(static_cast<Eigen::Index>(i)));
        const auto model = model_from_parameters(kind, params);
        try {
            model.validate();
        } catch (const ValidationError&) {
            return std::numeric_limits<double>::infinity();
        }
        return model_sse(model, records, config.space);
    };

    Eigen::VectorXd start(dim);
    if (config.initial) {
        if (config.initial->size() != dim) throw ValidationError("fit_model: initial point has wrong dimension");
        for (std::size_t i = 0; i < dim; ++i) {
            const double x = (*config.initial)[i];
            if (x < bounds[i].lo || x > bounds[i].hi) {
                throw ValidationError("fit_model: initial " + bounds[i].name + " outside its bounds");
            }
            start(static_cast<Eigen::Index>(i)) = to_working(bounds[i], x);
        }
    } else {
        const int g = config.grid_points;
        double best = std::numeric_limits<double>::infinity();
        Eigen::VectorXd u(dim);
        std::vector<int> idx(dim, 0);
        while (true) {
            for (std::size_t i = 0; i < dim; ++i) u(static_cast<Eigen::Index>(i)) = double(idx[i]) / double(g - 1);
            const double f = objective(u);
            if (f < best) {
                best = f;
                start = u;
            }
            std::size_t i = 0;
            while (i < dim && ++idx[i] == g) idx[i++] = 0;
            if (i == dim) break;
        }
    }

    NelderMeadOptions opts;
    opts.x_tol = config.rel_tol;
    opts.max_evaluations = config.max_evaluations;
    const Eigen::VectorXd step = Eigen::VectorXd::Constant(dim, 0.05);
    const auto nm = nelder_mead(objective, start, step, Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim), opts);

    for (std::size_t i = 0; i < dim; ++i) params[i] = from_working(bounds[i], nm.x(static_cast<Eigen::Index>(i)));
    FitResult result;
    result.model = model_from_parameters(kind, params);
    result.sse = nm.f;
    result.n_points = records.size();
    result.evaluations = evaluations;
    result.converged = nm.converged;
    result.space = config.space;
    return result;
}

LineFit loglog_regression(std::span<const SupernovaRecord> records)
{
    if (records.size() < 3) {
        throw ValidationError("loglog_regression: need at least 3 records");
    }
    const double n = double(records.size());
    std::vector<double> x(records.size()), y(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        x[i] = std::log10(records[i].z);
        y[i] = log_distance(records[i]);
    }
    const double mx = pairwise_sum(x) / n;
    const double my = pairwise_sum(y) / n;
    std::vector<double> sxx(x.size()), syy(x.size()), sxy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx[i] = dx * dx;
        syy[i] = dy * dy;
        sxy[i] = dx * dy;
    }
    const double Sxx = pairwise_sum(sxx), Syy = pairwise_sum(syy), Sxy = pairwise_sum(sxy);
    if (!(Sxx > 0.0)) {
        throw ValidationError("loglog_regression: all redshifts are equal");
    }

    LineFit fit;
    fit.n_points = records.size();
    fit.slope = Sxy / Sxx;
    fit.intercept = my - fit.slope * mx;
    fit.correlation = Syy > 0.0 ? Sxy / std::sqrt(Sxx * Syy) : 1.0;
    std::vector<double> res(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        res[i] = r * r;
    }
    fit.sse = pairwise_sum(res);
    return fit;
}

} // namespace gpi::sn
