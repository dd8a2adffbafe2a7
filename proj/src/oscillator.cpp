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
#include <gpi/oscillator.hpp>

#include <string>

namespace gpi {

ChainComplex ladder_complex(Index n_time)
{
    if (n_time < 2) {
        throw ValidationError("ladder_complex: n_time must be at least 2");
    }
    const Index n = n_time;
    std::vector<Link> links;
    auto a = [](Index t) { return t; };
    auto b = [n](Index t) { return n + t; };
    for (Index t = 0; t + 1 < n; ++t) {
        links.push_back({a(t), a(t + 1), "a" + std::to_string(t + 1)});
    }
    for (Index t = 0; t + 1 < n; ++t) {
        links.push_back({b(t), b(t + 1), "b" + std::to_string(t + 1)});
    }
    for (Index t = 0; t < n; ++t) {
        links.push_back({a(t), b(t), "r" + std::to_string(t + 1)});
    }

    const Index rail_a = 0, rail_b = n - 1, rung = 2 * (n - 1);
    std::vector<Plaquette> plaquettes;
    for (Index t = 0; t + 1 < n; ++t) {
        plaquettes.push_back(
            {"p" + std::to_string(t + 1),
             {{rung + t, 1}, {rail_b + t, 1}, {rung + t + 1, -1}, {rail_a + t, -1}}});
    }
    return ChainComplex(2 * n, std::move(links), std::move(plaquettes));
}

} // namespace gpi
