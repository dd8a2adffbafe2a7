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
#include <gpi/spectrum.hpp>
#include <gpi/supernova.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpi::io {

/// Whole file as a string; throws gpi::Error if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// CSV with header `link,value`. The link column holds a link label or a 1-based index.
/// Every link must appear exactly once.
Vector<double> read_link_values(std::string_view csv, const ChainComplex& cc);

/// CSV with header `vertex,value`; vertex is `v<i>` or a 1-based index.
Vector<double> read_vertex_values(std::string_view csv, const ChainComplex& cc);

/// CSV `name,z,observed,predicted,residual` (log10 D_L/Gpc columns).
std::string write_residuals(std::span<const sn::ResidualRow> rows);
std::vector<sn::ResidualRow> read_residuals(std::string_view csv);

/// Two-panel Hubble diagram: log10(D_L/Gpc) against log10 z, and distance modulus against z,
/// observed points with the model curve on top. Output depends only on `rows`.
std::string hubble_diagram_svg(std::span<const sn::ResidualRow> rows, std::string_view title = "");

} // namespace gpi::io
