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

#include <algorithm>
#include <numeric>
#include <vector>

namespace gpi {

struct NelderMeadOptions
{
    double x_tol = 1e-6;  ///< max distance (inf-norm) of simplex vertices from the best one
    int max_evaluations = 20000;
    int max_restarts = 5; ///< re-expand around the optimum until it stops improving
};

struct NelderMeadResult
{
    Eigen::VectorXd x;
    double f = 0;
    int evaluations = 0;
    bool converged = false;
};

///
/// Box-constrained Nelder-Mead. Trial points are clamped into [lo, hi]; `step` sets the
/// initial simplex edge along each axis.
///
template <typename Function>
NelderMeadResult nelder_mead(
    Function&& f,
    Eigen::VectorXd x0,
    const Eigen::VectorXd& step,
    const Eigen::VectorXd& lo,
    const Eigen::VectorXd& hi,
    const NelderMeadOptions& options = {})
{
    const Eigen::Index n = x0.size();
    NelderMeadResult result;
    auto clamp = [&](Eigen::VectorXd x) { return x.cwiseMax(lo).cwiseMin(hi).eval(); };
    auto eval = [&](const Eigen::VectorXd& x) {
        ++result.evaluations;
        return f(x);
    };

    x0 = clamp(x0);
    result.x = x0;
    result.f = eval(x0);

    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        std::vector<Eigen::VectorXd> simplex{result.x};
        std::vector<double> values{result.f};
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::VectorXd v = result.x;
            v(i) += step(i);
            if (v(i) > hi(i)) v(i) = result.x(i) - step(i);
            v = clamp(v);
            simplex.push_back(v);
            values.push_back(eval(v));
        }

        std::vector<std::size_t> order(simplex.size());
        bool converged = false;
        while (result.evaluations < options.max_evaluations) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
            const auto best = order.front();
            const auto worst = order.back();
            const auto second_worst = order[order.size() - 2];

            double spread = 0;
            for (const auto& v : simplex) spread = std::max(spread, (v - simplex[best]).cwiseAbs().maxCoeff());
            if (spread <= options.x_tol) {
                converged = true;
                break;
            }

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
            for (auto i : order) {
                if (i != worst) centroid += simplex[i];
            }
            centroid /= double(n);

            const Eigen::VectorXd xr = clamp(centroid + (centroid - simplex[worst]));
            const double fr = eval(xr);
            if (fr < values[best]) {
                const Eigen::VectorXd xe = clamp(centroid + 2.0 * (centroid - simplex[worst]));
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[worst] = xe;
                    values[worst] = fe;
                } else {
                    simplex[worst] = xr;
                    values[worst] = fr;
                }
                continue;
            }
            if (fr < values[second_worst]) {
                simplex[worst] = xr;
                values[worst] = fr;
                continue;
            }
            const bool outside = fr < values[worst];
            const Eigen::VectorXd xc = outside ? clamp(centroid + 0.5 * (xr - centroid))
                                               : clamp(centroid + 0.5 * (simplex[worst] - centroid));
            const double fc = eval(xc);
            if (fc < (outside ? fr : values[worst])) {
                simplex[worst] = xc;
                values[worst] = fc;
                continue;
            }
            for (auto i : order) {
                if (i == best) continue;
                simplex[i] = clamp(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
                values[i] = eval(simplex[i]);
            }
        }

        const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
        const bool improved = values[best] < result.f;
        if (values[best] <= result.f) {
            result.x = simplex[best];
            result.f = values[best];
        }
        result.converged = converged;
        if (!converged || (restart > 0 && !improved)) break;
    }
    return result;
}

} // namespace gpi
