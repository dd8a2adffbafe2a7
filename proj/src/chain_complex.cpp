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
#include <gpi/chain_complex.hpp>
#include <gpi/error.hpp>

#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gpi {

namespace {

bool valid_label(const std::string& label)
{
    if (label.empty() || label[0] == '+' || label[0] == '-') return false;
    return label.find_first_of(" \t\r\n#") == std::string::npos;
}

void check_structure(Index vertex_count, const std::vector<Link>& links, const std::vector<Plaquette>& plaquettes)
{
    if (vertex_count <= 0) {
        throw ValidationError("vertex count must be positive");
    }
    std::set<std::string> labels;
    for (std::size_t j = 0; j < links.size(); ++j) {
        const auto& l = links[j];
        if (l.tail < 0 || l.tail >= vertex_count || l.head < 0 || l.head >= vertex_count) {
            throw ValidationError("link '" + l.label + "' references a vertex outside [1, " +
                                  std::to_string(vertex_count) + "]");
        }
        if (l.tail == l.head) {
            throw ValidationError("link '" + l.label + "' is a self-loop");
        }
        if (!valid_label(l.label)) {
            throw ValidationError("invalid link label '" + l.label + "'");
        }
        if (!labels.insert(l.label).second) {
            throw ValidationError("duplicate label '" + l.label + "'");
        }
    }
    for (const auto& p : plaquettes) {
        if (!valid_label(p.label)) {
            throw ValidationError("invalid plaquette label '" + p.label + "'");
        }
        if (!labels.insert(p.label).second) {
            throw ValidationError("duplicate label '" + p.label + "'");
        }
        if (p.boundary.empty()) {
            throw ValidationError("plaquette '" + p.label + "' has an empty boundary");
        }
        std::set<Index> seen;
        for (const auto& s : p.boundary) {
            if (s.link < 0 || s.link >= static_cast<Index>(links.size())) {
                throw ValidationError("plaquette '" + p.label + "' references a missing link");
            }
            if (s.sign != 1 && s.sign != -1) {
                throw ValidationError("plaquette '" + p.label + "' has a sign other than +1/-1");
            }
            if (!seen.insert(s.link).second) {
                throw ValidationError(
                    "plaquette '" + p.label + "' uses link '" + links[s.link].label + "' twice");
            }
        }
    }
}

void check_closure(Index vertex_count, const std::vector<Link>& links, const std::vector<Plaquette>& plaquettes)
{
    std::vector<int> net(static_cast<std::size_t>(vertex_count));
    for (const auto& p : plaquettes) {
        std::fill(net.begin(), net.end(), 0);
        for (const auto& s : p.boundary) {
            net[links[s.link].head] += s.sign;
            net[links[s.link].tail] -= s.sign;
        }
        for (std::size_t v = 0; v < net.size(); ++v) {
            if (net[v] != 0) {
                throw ValidationError("plaquette '" + p.label + "' does not close (vertex v" +
                                      std::to_string(v + 1) + " has net boundary " +
                                      std::to_string(net[v]) + ")");
            }
        }
    }
}

} // namespace

ChainComplex::ChainComplex(Unchecked, Index vertex_count, std::vector<Link> links, std::vector<Plaquette> plaquettes)
    : m_vertex_count(vertex_count)
    , m_links(std::move(links))
    , m_plaquettes(std::move(plaquettes))
{
    check_structure(m_vertex_count, m_links, m_plaquettes);
}

ChainComplex::ChainComplex(Index vertex_count, std::vector<Link> links, std::vector<Plaquette> plaquettes)
    : ChainComplex(Unchecked{}, vertex_count, std::move(links), std::move(plaquettes))
{
    check_closure(m_vertex_count, m_links, m_plaquettes);
}

ChainComplex ChainComplex::without_closure_check(
    Index vertex_count,
    std::vector<Link> links,
    std::vector<Plaquette> plaquettes)
{
    return ChainComplex(Unchecked{}, vertex_count, std::move(links), std::move(plaquettes));
}

IntegerMatrix boundary_1(const ChainComplex& cc)
{
    IntegerMatrix d1 = IntegerMatrix::Zero(cc.vertex_count(), cc.link_count());
    for (Index j = 0; j < cc.link_count(); ++j) {
        const auto& l = cc.links()[static_cast<std::size_t>(j)];
        d1(l.tail, j) = -1;
        d1(l.head, j) = 1;
    }
    return d1;
}

IntegerMatrix boundary_2(const ChainComplex& cc)
{
    IntegerMatrix d2 = IntegerMatrix::Zero(cc.link_count(), cc.plaquette_count());
    for (Index i = 0; i < cc.plaquette_count(); ++i) {
        for (const auto& s : cc.plaquettes()[static_cast<std::size_t>(i)].boundary) {
            d2(s.link, i) = s.sign;
        }
    }
    return d2;
}

BoundaryCheck verify_boundary_of_boundary(const ChainComplex& cc)
{
    BoundaryCheck check;
    check.residual = boundary_1(cc) * boundary_2(cc);
    check.holds = check.residual.size() == 0 || (check.residual.array() == 0).all();
    return check;
}

ChainComplex figure3_complex()
{
    // (tail, head) pairs, 0-based.
    std::vector<Link> links{
        {0, 1, "e1"},
        {1, 4, "e2"},
        {1, 2, "e3"},
        {0, 3, "e4"},
        {3, 4, "e5"},
        {4, 5, "e6"},
        {2, 5, "e7"},
    };
    std::vector<Plaquette> plaquettes{
        {"p1", {{3, 1}, {4, 1}, {1, -1}, {0, -1}}},
        {"p2", {{1, 1}, {5, 1}, {2, -1}, {6, -1}}},
    };
    return ChainComplex(6, std::move(links), std::move(plaquettes));
}

Index connected_components(const ChainComplex& cc)
{
    std::vector<Index> parent(static_cast<std::size_t>(cc.vertex_count()));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    Index components = cc.vertex_count();
    for (const auto& l : cc.links()) {
        Index a = find(l.tail), b = find(l.head);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

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

bool parse_positive(std::string_view s, Index& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

} // namespace

ChainComplex parse_graph(std::string_view text)
{
    Index vertex_count = 0;
    std::size_t vertices_line = 0;
    std::vector<Link> links;
    std::unordered_map<std::string, Index> link_index;
    std::vector<Plaquette> plaquettes;
    std::vector<std::size_t> plaquette_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tok = split_ws(line);
        if (tok.empty()) continue;

        if (tok[0] == "vertices") {
            if (vertices_line) throw ParseError(line_no, "duplicate 'vertices' directive");
            if (tok.size() != 2 || !parse_positive(tok[1], vertex_count)) {
                throw ParseError(line_no, "expected 'vertices <positive integer>'");
            }
            vertices_line = line_no;
        } else if (tok[0] == "link") {
            if (!vertices_line) throw ParseError(line_no, "'link' before 'vertices'");
            if (tok.size() != 4) throw ParseError(line_no, "expected 'link <label> v<i> v<j>'");
            Index ends[2];
            for (int k = 0; k < 2; ++k) {
                auto v = tok[2 + k];
                if (v.size() < 2 || v[0] != 'v' || !parse_positive(v.substr(1), ends[k])) {
                    throw ParseError(line_no, "bad vertex reference '" + std::string(v) + "'");
                }
                if (ends[k] > vertex_count) {
                    throw ParseError(line_no, "vertex '" + std::string(v) + "' exceeds vertex count " +
                                                  std::to_string(vertex_count));
                }
            }
            if (ends[0] == ends[1]) throw ParseError(line_no, "self-loop link");
            std::string label(tok[1]);
            if (!link_index.emplace(label, static_cast<Index>(links.size())).second) {
                throw ParseError(line_no, "duplicate link label '" + label + "'");
            }
            links.push_back({ends[0] - 1, ends[1] - 1, std::move(label)});
        } else if (tok[0] == "plaquette") {
            if (tok.size() < 3) throw ParseError(line_no, "expected 'plaquette <label> <+/-link> ...'");
            Plaquette p{std::string(tok[1]), {}};
            for (std::size_t k = 2; k < tok.size(); ++k) {
                auto ref = tok[k];
                int sign = 1;
                if (ref[0] == '+' || ref[0] == '-') {
                    sign = ref[0] == '-' ? -1 : 1;
                    ref.remove_prefix(1);
                }
                auto it = link_index.find(std::string(ref));
                if (ref.empty() || it == link_index.end()) {
                    throw ParseError(line_no, "plaquette '" + p.label + "' references unknown link '" +
                                                  std::string(ref) + "'");
                }
                p.boundary.push_back({it->second, sign});
            }
            plaquettes.push_back(std::move(p));
            plaquette_lines.push_back(line_no);
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    if (!vertices_line) throw ParseError(0, "missing 'vertices' directive");

    // Closure errors are reported against the offending plaquette line.
    for (std::size_t i = 0; i < plaquettes.size(); ++i) {
        try {
            check_closure(vertex_count, links, {plaquettes[i]});
        } catch (const ValidationError& e) {
            throw ParseError(plaquette_lines[i], e.what());
        }
    }
    return ChainComplex(vertex_count, std::move(links), std::move(plaquettes));
}

std::string serialize_graph(const ChainComplex& cc)
{
    std::ostringstream out;
    out << "vertices " << cc.vertex_count() << '\n';
    for (const auto& l : cc.links()) {
        out << "link " << l.label << " v" << l.tail + 1 << " v" << l.head + 1 << '\n';
    }
    for (const auto& p : cc.plaquettes()) {
        out << "plaquette " << p.label;
        for (const auto& s : p.boundary) {
            out << ' ' << (s.sign > 0 ? '+' : '-') << cc.links()[static_cast<std::size_t>(s.link)].label;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace gpi
