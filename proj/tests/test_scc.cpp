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
#include "test_support.hpp"

#include <gpi/error.hpp>
#include <gpi/oscillator.hpp>
#include <gpi/scc.hpp>

#include <doctest.h>

using namespace gpi;

TEST_CASE("build_K")
{
    SUBCASE("six-vertex example equals the printed Laplacian")
    {
        CHECK(build_K(figure3_complex(), 1.0) == testing::printed_laplacian());
    }
    SUBCASE("single link")
    {
        Eigen::MatrixXd expected(2, 2);
        expected << 1, -1, -1, 1;
        CHECK(build_K(testing::single_link_complex(), 1.0) == expected);
    }
    SUBCASE("linear in beta")
    {
        const auto cc = figure3_complex();
        const Eigen::MatrixXd K2 = build_K(cc, 2.0);
        CHECK(K2 == 2.0 * testing::printed_laplacian());
        const auto s1 = spectrum(build_K(cc, 1.0));
        const auto s2 = spectrum(K2);
        CHECK((s2.eigenvalues - 2.0 * s1.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("beta must be positive")
    {
        CHECK_THROWS_AS(build_K(figure3_complex(), 0.0), ValidationError);
        CHECK_THROWS_AS(build_K(figure3_complex(), -1.0), ValidationError);
    }
    SUBCASE("float scalar")
    {
        const Eigen::MatrixXf Kf = build_K<float>(figure3_complex(), 1.0f);
        CHECK(Kf == testing::printed_laplacian().cast<float>());
    }
}

TEST_CASE("build_J")
{
    const auto cc = figure3_complex();
    SUBCASE("unit link vectors reproduce the printed source coefficients")
    {
        const auto coeff = testing::printed_source_coefficients();
        for (Index j = 0; j < 7; ++j) {
            const Eigen::VectorXd e = Eigen::VectorXd::Unit(7, j);
            CHECK(build_J(cc, e, 1.0) == coeff.col(j).cast<double>());
        }
    }
    SUBCASE("all-ones links")
    {
        Eigen::VectorXd expected(6);
        expected << -2, -1, 0, 0, 1, 2;
        const Eigen::VectorXd J = build_J(cc, Eigen::VectorXd::Ones(7).eval(), 1.0);
        CHECK(J == expected);
        CHECK(J.sum() == 0.0);
    }
    SUBCASE("zero links give zero source")
    {
        CHECK(build_J(cc, Eigen::VectorXd::Zero(7).eval(), 3.0).isZero(0.0));
    }
    SUBCASE("length mismatch")
    {
        CHECK_THROWS_AS(build_J(cc, Eigen::VectorXd::Ones(6).eval(), 1.0), ValidationError);
    }
}

TEST_CASE("link_values_from_vertices")
{
    const auto cc = figure3_complex();
    Eigen::VectorXd v(6);
    v << 0, 1, 2, 3, 4, 5;
    Eigen::VectorXd expected(7);
    expected << 1, 3, 1, 3, 1, 1, 3;
    CHECK(link_values_from_vertices(cc, v) == expected);
    CHECK(link_values_from_vertices(cc, Eigen::VectorXd::Constant(6, 4.25).eval()).isZero(0.0));
    CHECK_THROWS_AS(link_values_from_vertices(cc, Eigen::VectorXd::Ones(5).eval()), ValidationError);

    // Each link value is head minus tail.
    Eigen::VectorXd sym(6);
    sym << 1, 2, 4, 8, 16, 32;
    const auto e = link_values_from_vertices(cc, sym);
    for (Index j = 0; j < cc.link_count(); ++j) {
        const auto& l = cc.links()[static_cast<std::size_t>(j)];
        CHECK(e(j) == sym(l.head) - sym(l.tail));
    }
}

TEST_CASE("verify_scc")
{
    const auto cc = figure3_complex();
    CHECK(verify_scc(cc, Eigen::VectorXd::Zero(6).eval()) == 0.0);
    CHECK_THROWS_AS(verify_scc(cc, Eigen::VectorXd::Ones(6).eval(), 0.0, 1.0), ValidationError);

    std::mt19937_64 rng(7);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto v = testing::random_vector(rng, 6);
        worst = std::max(worst, verify_scc(cc, v, 1.0, 1.0) / std::max(v.cwiseAbs().maxCoeff(), 1e-300));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("SCC identity, zero-sum sources and row-space membership on random complexes")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> scale(0.25, 4.0);
    std::bernoulli_distribution negative(0.5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto cc = testing::random_complex(rng);
        const double alpha = (negative(rng) ? -1.0 : 1.0) * scale(rng);
        const double beta = scale(rng);
        const auto v = testing::random_vector(rng, cc.vertex_count());
        const auto e = link_values_from_vertices(cc, v);

        const Eigen::MatrixXd K = build_K(cc, beta);
        const Eigen::VectorXd J = build_J(cc, e, alpha);
        CHECK((K * v - (beta / alpha) * J).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff()) * beta);

        // arbitrary link values, not only gradients
        const auto e_any = testing::random_vector(rng, cc.link_count(), -3.0, 3.0);
        const Eigen::VectorXd J_any = build_J(cc, e_any, alpha);
        CHECK(std::abs(J_any.sum()) <= 1e-12 * std::abs(alpha) * std::max(1.0, e_any.lpNorm<1>()));

        const auto null = gauge_null_space(K);
        CHECK(null.cols() == 1);
        for (Index c = 0; c < null.cols(); ++c) {
            CHECK(std::abs(null.col(c).dot(J_any)) <= 1e-12 * std::max(1.0, J_any.norm()));
        }

        // symmetric PSD
        CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const auto s = spectrum(K);
        CHECK(s.eigenvalues.minCoeff() >= -1e-10 * s.eigenvalues.maxCoeff());

        // linearity
        const auto e2 = testing::random_vector(rng, cc.link_count());
        const Eigen::VectorXd lhs = build_J(cc, (e_any + 2.0 * e2).eval(), alpha);
        const Eigen::VectorXd rhs = J_any + 2.0 * build_J(cc, e2, alpha);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("gauge_null_space")
{
    SUBCASE("connected example: normalized all-ones vector")
    {
        const auto null = gauge_null_space(testing::printed_laplacian());
        REQUIRE(null.cols() == 1);
        const Eigen::VectorXd expected = Eigen::VectorXd::Constant(6, 1.0 / std::sqrt(6.0));
        CHECK((null.col(0) - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("nonsingular matrix has no gauge modes")
    {
        CHECK(gauge_null_space(Eigen::MatrixXd::Identity(4, 4)).cols() == 0);
        Eigen::MatrixXd K = testing::printed_laplacian() + Eigen::MatrixXd::Identity(6, 6);
        CHECK(gauge_null_space(K).cols() == 0);
    }
    SUBCASE("two components: span of the component indicators")
    {
        const auto null = gauge_null_space(build_K(testing::two_component_complex(), 1.0));
        REQUIRE(null.cols() == 2);
        CHECK((null.transpose() * null - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::MatrixXd indicators = Eigen::MatrixXd::Zero(4, 2);
        indicators(0, 0) = indicators(1, 0) = 1.0 / std::sqrt(2.0);
        indicators(2, 1) = indicators(3, 1) = 1.0 / std::sqrt(2.0);
        // each indicator lies in the null span: projection recovers it
        const Eigen::MatrixXd projected = null * (null.transpose() * indicators);
        CHECK((projected - indicators).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("ladders are connected")
    {
        for (Index n = 2; n <= 8; ++n) {
            CHECK(gauge_null_space(build_K(ladder_complex(n), 1.0)).cols() == 1);
        }
    }
}

TEST_CASE("make_actional bundles K and J")
{
    const auto cc = figure3_complex();
    const auto act = make_actional(cc, Eigen::VectorXd::Ones(7).eval(), 2.0, 3.0);
    CHECK(act.K == 3.0 * testing::printed_laplacian());
    CHECK(act.J.sum() == 0.0);
    CHECK(act.alpha == 2.0);
    CHECK(act.beta == 3.0);
}
