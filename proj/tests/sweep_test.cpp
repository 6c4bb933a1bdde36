// Copyright 2026 The floquet-tm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "floquet_tm/sweep.hpp"
#include "oracles.hpp"

namespace {

using namespace floquet_tm;

SweepSpec epsilon_sweep(int points, double g = 0.05, int n_max = 150) {
    SweepSpec s;
    s.base = ChainConfig::uniform(2, g, 0.0);
    s.values = linspace(0.0, 0.2, points);
    s.n_max = n_max;
    return s;
}

TEST(Linspace, Endpoints) {
    const auto v = linspace(0.0, 0.2, 401);
    ASSERT_EQ(v.size(), 401u);
    EXPECT_EQ(v.front(), 0.0);
    EXPECT_EQ(v.back(), 0.2);
    EXPECT_EQ(linspace(0.3, 1.0, 1), std::vector<double>{0.3});
    EXPECT_THROW(linspace(0, 1, 0), ParameterError);
}

TEST(RunSweep, PerfectPulseRow) {
    SweepSpec s;
    s.base = ChainConfig::uniform(2, 0.0, 0.0);
    s.values = {0.0};
    s.n_max = 4;
    const auto grid = run_sweep(s, 1);
    ASSERT_EQ(grid.rows(), 1u);
    ASSERT_EQ(grid.cols(), 5u);
    const std::vector<double> expected{2, -2, 2, -2, 2};
    for (int n = 0; n <= 4; ++n) EXPECT_NEAR(grid.polarization[0][n], expected[n], 1e-15);
}

TEST(RunSweep, RowsEqualStandaloneEvolveBitwise) {
    const SweepSpec s = epsilon_sweep(17);
    const auto grid = run_sweep(s, 3);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const ChainConfig c = ChainConfig::uniform(2, 0.05, s.values[i]);
        const auto t = evolve(compose_floquet(c), initial_ferromagnetic_state(2), s.n_max);
        EXPECT_EQ(grid.polarization[i], t.polarization);
        EXPECT_EQ(grid.entropy[i], t.entropy);
    }
}

TEST(RunSweep, WorkerCountIndependent) {
    const SweepSpec s = epsilon_sweep(64);
    const auto a = run_sweep(s, 1);
    for (int w : {2, 3, 8}) {
        const auto b = run_sweep(s, w);
        EXPECT_EQ(a.polarization, b.polarization);
        EXPECT_EQ(a.entropy, b.entropy);
        EXPECT_EQ(a.metadata.config_hash, b.metadata.config_hash);
    }
}

TEST(RunSweep, OrderIndependence) {
    oracle::Gen gen(51);
    SweepSpec s = epsilon_sweep(12, 0.05, 60);
    const auto base = run_sweep(s, 2);
    std::vector<std::size_t> perm(s.values.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    // Each row depends only on its value: recompute rows in permuted order.
    for (std::size_t k : perm) {
        const auto t = run_row(s, s.values[k]);
        EXPECT_EQ(t.polarization, base.polarization[k]);
    }
}

TEST(RunSweep, AxisSubstitution) {
    SweepSpec s;
    s.base = ChainConfig::uniform(3, 0.05, 0.04);
    s.base.pulse_imperfections = {0.04, 0.04, 0.04};

    s.axis = SweepAxis::EpsilonUniform;
    s.epsilon_add = 0.03;
    auto c = config_for_value(s, 0.1);
    EXPECT_EQ(c.pulse_imperfections, (std::vector<double>{0.1, 0.1 + 0.03, 0.1}));

    s.axis = SweepAxis::EpsilonAdd;
    c = config_for_value(s, 0.06);
    EXPECT_EQ(c.pulse_imperfections, (std::vector<double>{0.04, 0.04 + 0.06, 0.04}));

    s.axis = SweepAxis::Coupling;
    EXPECT_EQ(config_for_value(s, 0.3).coupling, 0.3);

    s.axis = SweepAxis::DeltaSite;
    EXPECT_EQ(config_for_value(s, 0.7).detunings, (std::vector<double>{0, 0, 0.7}));
    s.delta_site = 2;
    EXPECT_EQ(config_for_value(s, 0.7).detunings, (std::vector<double>{0, 0.7, 0}));
    s.delta_site = 4;
    EXPECT_THROW(config_for_value(s, 0.7), ParameterError);
}

TEST(RunSweep, Validation) {
    SweepSpec s = epsilon_sweep(3);
    s.values = {0.1, 0.1};
    EXPECT_THROW(run_sweep(s), ParameterError);
    s.values = {};
    EXPECT_THROW(run_sweep(s), ParameterError);
    s.values = {0.0, std::nan("")};
    EXPECT_THROW(run_sweep(s), ParameterError);
    s.values = {0.0};
    s.n_max = -1;
    EXPECT_THROW(run_sweep(s), ParameterError);
}

TEST(RunSweep, FailingRowReportsValue) {
    SweepSpec s = epsilon_sweep(3);
    s.axis = SweepAxis::Coupling;
    s.values = {0.1, 0.2, std::numeric_limits<double>::infinity()};
    EXPECT_THROW(run_sweep(s), ParameterError);
    s.values = {-0.2, -0.1, 0.1};
    try {
        run_sweep(s, 2);
        FAIL() << "negative coupling accepted";
    } catch (const ParameterError &e) {
        EXPECT_NE(std::string(e.what()).find("g=-0.2"), std::string::npos) << e.what();
    }
}

TEST(RunSweep, GridBounds) {
    SweepSpec s;
    s.base = ChainConfig::uniform(3, 0.05, 0.0, 0.1);
    s.values = linspace(0.0, 0.2, 8);
    s.n_max = 100;
    s.entropy_block = SiteSet::half_chain(3);
    const auto grid = run_sweep(s);
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        ASSERT_EQ(grid.polarization[i].size(), 101u);
        for (std::size_t n = 0; n < grid.cols(); ++n) {
            EXPECT_LE(std::abs(grid.polarization[i][n]), 3 + 1e-12);
            EXPECT_GE(grid.entropy[i][n], 0.0);
            EXPECT_LE(grid.entropy[i][n], std::log(2.0) + 1e-12);
        }
    }
}

TEST(RunSweep, OverlapsOnRows) {
    SweepSpec s = epsilon_sweep(2, 0.05, 20);
    s.record_overlaps = true;
    const auto t = run_row(s, 0.0436);
    ASSERT_EQ(t.eigen_overlaps.size(), 21u);
    for (const auto &row : t.eigen_overlaps) {
        double sum = 0.0;
        for (const auto &c : row) sum += std::norm(c);
        EXPECT_NEAR(sum, 1.0, 1e-10);
    }
}

TEST(ConfigHash, StableAndSensitive) {
    const SweepSpec a = epsilon_sweep(10);
    SweepSpec b = a;
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
    b.n_max = 151;
    EXPECT_NE(config_hash(a), config_hash(b));
    b = a;
    b.base.coupling = 0.0500000001;
    EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(FormatDouble, RoundTrips) {
    oracle::Gen gen(52);
    for (int i = 0; i < 1000; ++i) {
        const double x = gen.uniform(-10, 10) * std::pow(10.0, gen.integer(-20, 20));
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.05), "0.05");
    EXPECT_EQ(format_double(2.0), "2");
}

TEST(ResolveWorkerCount, EnvironmentOverride) {
    EXPECT_EQ(resolve_worker_count(3), 3u);
    setenv("FLOQUET_TM_THREADS", "5", 1);
    EXPECT_EQ(resolve_worker_count(0), 5u);
    setenv("FLOQUET_TM_THREADS", "0", 1);
    EXPECT_GE(resolve_worker_count(0), 1u);
    unsetenv("FLOQUET_TM_THREADS");
    EXPECT_GE(resolve_worker_count(0), 1u);
}

TEST(ParseSweepAxis, NamesAndErrors) {
    EXPECT_EQ(parse_sweep_axis("epsilon_uniform"), SweepAxis::EpsilonUniform);
    EXPECT_EQ(parse_sweep_axis("epsilon_add"), SweepAxis::EpsilonAdd);
    EXPECT_EQ(parse_sweep_axis("g"), SweepAxis::Coupling);
    EXPECT_EQ(parse_sweep_axis("delta_site"), SweepAxis::DeltaSite);
    EXPECT_THROW(parse_sweep_axis("time"), ParameterError);
}

} // namespace
