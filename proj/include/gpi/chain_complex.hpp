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

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace gpi {

using Index = Eigen::Index;
using IntegerMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Directed link between two vertices (0-based). boundary(link) = head - tail.
struct Link
{
    Index tail = 0;
    Index head = 0;
    std::string label;

    friend bool operator==(const Link&, const Link&) = default;
};

struct SignedLink
{
    Index link = 0; ///< 0-based link index
    int sign = 1;   ///< +1 or -1

    friend bool operator==(const SignedLink&, const SignedLink&) = default;
};

/// Oriented 2-cell, stored as the signed chain of links forming its boundary.
struct Plaquette
{
    std::string label;
    std::vector<SignedLink> boundary;

    friend bool operator==(const Plaquette&, const Plaquette&) = default;
};

///
/// A 2-dimensional chain complex C0 <- C1 <- C2 built from vertices, directed links and
/// oriented plaquettes. Immutable once constructed.
///
/// The public constructor enforces every invariant: indices in range, no self-loops, unique
/// labels, and closed plaquettes (the vertex boundary of each signed link chain vanishes).
///
class ChainComplex
{
public:
    ChainComplex(Index vertex_count, std::vector<Link> links, std::vector<Plaquette> plaquettes);

    /// Same as the constructor but skips the plaquette closure check. Only meant for
    /// diagnostics, e.g. exercising verify_boundary_of_boundary on a broken complex.
    static ChainComplex without_closure_check(
        Index vertex_count,
        std::vector<Link> links,
        std::vector<Plaquette> plaquettes);

    Index vertex_count() const noexcept { return m_vertex_count; }
    Index link_count() const noexcept { return static_cast<Index>(m_links.size()); }
    Index plaquette_count() const noexcept { return static_cast<Index>(m_plaquettes.size()); }

    const std::vector<Link>& links() const noexcept { return m_links; }
    const std::vector<Plaquette>& plaquettes() const noexcept { return m_plaquettes; }

    friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

private:
    struct Unchecked
    {};
    ChainComplex(Unchecked, Index vertex_count, std::vector<Link> links, std::vector<Plaquette> plaquettes);

    Index m_vertex_count = 0;
    std::vector<Link> m_links;
    std::vector<Plaquette> m_plaquettes;
};

/// Links -> vertices. Shape vertex_count x link_count; column j is -1 at tail, +1 at head.
IntegerMatrix boundary_1(const ChainComplex& cc);

/// Plaquettes -> links. Shape link_count x plaquette_count.
IntegerMatrix boundary_2(const ChainComplex& cc);

struct BoundaryCheck
{
    bool holds = false;
    IntegerMatrix residual; ///< boundary_1 * boundary_2
};

/// Exact integer check of d1 * d2 == 0.
BoundaryCheck verify_boundary_of_boundary(const ChainComplex& cc);

/// The six-vertex, seven-link, two-plaquette (1+1)-dimensional example graph.
ChainComplex figure3_complex();

/// Number of connected components of the underlying undirected graph.
Index connected_components(const ChainComplex& cc);

///
/// Parse the line-oriented graph format:
///
///     # comment
///     vertices 6
///     link e1 v1 v2
///     plaquette p1 +e4 +e5 -e2 -e1
///
/// Vertex labels are 1-based. Throws ParseError (with line) or ValidationError.
///
ChainComplex parse_graph(std::string_view text);

std::string serialize_graph(const ChainComplex& cc);

} // namespace gpi
