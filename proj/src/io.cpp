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
#include <gpi/io.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace gpi::io {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

/// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t pos = 0, no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++no;
        if (!line.empty() && line.front() != '#') lines.emplace_back(no, line);
    }
    return lines;
}

double to_double(std::string_view s, std::size_t line)
{
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(line, "bad number '" + std::string(s) + "'");
    }
    return v;
}

bool to_index(std::string_view s, Index& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

Vector<double> read_keyed_values(
    std::string_view csv,
    std::string_view key_column,
    Index count,
    const std::function<bool(std::string_view, Index&)>& resolve)
{
    const auto lines = content_lines(csv);
    if (lines.empty() || split_csv(lines.front().second) != std::vector<std::string_view>{key_column, "value"}) {
        throw ParseError(lines.empty() ? 0 : lines.front().first, "expected header '" + std::string(key_column) + ",value'");
    }
    Vector<double> values(count);
    std::vector<bool> seen(static_cast<std::size_t>(count), false);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [no, line] = lines[i];
        const auto cells = split_csv(line);
        if (cells.size() != 2) throw ParseError(no, "expected two columns");
        Index k = 0;
        if (!resolve(cells[0], k) || k < 0 || k >= count) {
            throw ParseError(no, "unknown " + std::string(key_column) + " '" + std::string(cells[0]) + "'");
        }
        if (seen[static_cast<std::size_t>(k)]) {
            throw ParseError(no, "duplicate " + std::string(key_column) + " '" + std::string(cells[0]) + "'");
        }
        seen[static_cast<std::size_t>(k)] = true;
        values(k) = to_double(cells[1], no);
    }
    for (Index k = 0; k < count; ++k) {
        if (!seen[static_cast<std::size_t>(k)]) {
            throw ValidationError("missing value for " + std::string(key_column) + " " + std::to_string(k + 1));
        }
    }
    return values;
}

} // namespace

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Vector<double> read_link_values(std::string_view csv, const ChainComplex& cc)
{
    return read_keyed_values(csv, "link", cc.link_count(), [&](std::string_view key, Index& k) {
        for (Index j = 0; j < cc.link_count(); ++j) {
            if (cc.links()[static_cast<std::size_t>(j)].label == key) {
                k = j;
                return true;
            }
        }
        if (to_index(key, k)) {
            --k;
            return true;
        }
        return false;
    });
}

Vector<double> read_vertex_values(std::string_view csv, const ChainComplex& cc)
{
    return read_keyed_values(csv, "vertex", cc.vertex_count(), [](std::string_view key, Index& k) {
        if (!key.empty() && key.front() == 'v') key.remove_prefix(1);
        if (!to_index(key, k)) return false;
        --k;
        return true;
    });
}

std::string write_residuals(std::span<const sn::ResidualRow> rows)
{
    std::ostringstream out;
    out.precision(12);
    out << "name,z,observed,predicted,residual\n";
    for (const auto& r : rows) {
        out << r.name << ',' << r.z << ',' << r.observed << ',' << r.predicted << ',' << r.residual << '\n';
    }
    return out.str();
}

std::vector<sn::ResidualRow> read_residuals(std::string_view csv)
{
    const auto lines = content_lines(csv);
    if (lines.empty() ||
        split_csv(lines.front().second) !=
            std::vector<std::string_view>{"name", "z", "observed", "predicted", "residual"}) {
        throw ParseError(lines.empty() ? 0 : lines.front().first, "expected header 'name,z,observed,predicted,residual'");
    }
    std::vector<sn::ResidualRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [no, line] = lines[i];
        const auto c = split_csv(line);
        if (c.size() != 5) throw ParseError(no, "expected five columns");
        rows.push_back({std::string(c[0]), to_double(c[1], no), to_double(c[2], no), to_double(c[3], no), to_double(c[4], no)});
        if (!(rows.back().z > 0.0)) throw ParseError(no, "redshift must be positive");
    }
    if (rows.empty()) throw ValidationError("residuals file has no rows");
    return rows;
}

namespace {

struct Panel
{
    double x0, y0, w, h;          // pixel box
    double xmin, xmax, ymin, ymax; // data box

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void pad_range(double& lo, double& hi)
{
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
}

void draw_panel(
    std::ostringstream& out,
    const Panel& p,
    const std::vector<std::pair<double, double>>& points,
    const std::vector<std::pair<double, double>>& curve,
    std::string_view xlabel,
    std::string_view ylabel)
{
    out << "<rect x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0) << "\" width=\"" << fmt(p.w) << "\" height=\""
        << fmt(p.h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = p.xmin + (p.xmax - p.xmin) * i / 4.0;
        const double yv = p.ymin + (p.ymax - p.ymin) * i / 4.0;
        out << "<text x=\"" << fmt(p.px(xv)) << "\" y=\"" << fmt(p.y0 + p.h + 16)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
        out << "<text x=\"" << fmt(p.x0 - 6) << "\" y=\"" << fmt(p.py(yv) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    out << "<text x=\"" << fmt(p.x0 + p.w / 2) << "\" y=\"" << fmt(p.y0 + p.h + 34)
        << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    out << "<text x=\"" << fmt(p.x0 - 44) << "\" y=\"" << fmt(p.y0 + p.h / 2) << "\" font-size=\"13\" "
        << "text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(p.x0 - 44) << ' ' << fmt(p.y0 + p.h / 2)
        << ")\">" << ylabel << "</text>\n";
    out << "<g fill=\"#1f77b4\" fill-opacity=\"0.6\">\n";
    for (const auto& [x, y] : points) {
        out << "<circle cx=\"" << fmt(p.px(x)) << "\" cy=\"" << fmt(p.py(y)) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << (i ? " " : "") << fmt(p.px(curve[i].first)) << ',' << fmt(p.py(curve[i].second));
    }
    out << "\"/>\n";
}

} // namespace

std::string hubble_diagram_svg(std::span<const sn::ResidualRow> rows, std::string_view title)
{
    if (rows.empty()) throw ValidationError("hubble_diagram_svg: no rows");

    std::vector<sn::ResidualRow> sorted(rows.begin(), rows.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.z < b.z; });

    auto mu_of = [](double log_dl) { return 5.0 * (log_dl + 3.0) + 25.0; };
    std::vector<std::pair<double, double>> log_pts, log_curve, mu_pts, mu_curve;
    for (const auto& r : sorted) {
        log_pts.emplace_back(std::log10(r.z), r.observed);
        log_curve.emplace_back(std::log10(r.z), r.predicted);
        mu_pts.emplace_back(r.z, mu_of(r.observed));
        mu_curve.emplace_back(r.z, mu_of(r.predicted));
    }
    auto bounds = [](const auto& a, const auto& b) {
        double xlo = a.front().first, xhi = xlo, ylo = a.front().second, yhi = ylo;
        for (const auto* v : {&a, &b}) {
            for (const auto& [x, y] : *v) {
                xlo = std::min(xlo, x);
                xhi = std::max(xhi, x);
                ylo = std::min(ylo, y);
                yhi = std::max(yhi, y);
            }
        }
        pad_range(xlo, xhi);
        pad_range(ylo, yhi);
        return std::array<double, 4>{xlo, xhi, ylo, yhi};
    };
    const auto lb = bounds(log_pts, log_curve);
    const auto mb = bounds(mu_pts, mu_curve);
    const Panel left{70, 40, 360, 300, lb[0], lb[1], lb[2], lb[3]};
    const Panel right{540, 40, 360, 300, mb[0], mb[1], mb[2], mb[3]};

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"940\" height=\"400\" viewBox=\"0 0 940 400\" "
        << "font-family=\"sans-serif\">\n"
        << "<rect width=\"940\" height=\"400\" fill=\"white\"/>\n";
    if (!title.empty()) {
        out << "<text x=\"470\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
    }
    draw_panel(out, left, log_pts, log_curve, "log10 z", "log10(D_L / Gpc)");
    draw_panel(out, right, mu_pts, mu_curve, "z", "distance modulus");
    out << "</svg>\n";
    return out.str();
}

} // namespace gpi::io
