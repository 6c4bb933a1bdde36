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

#include "floquet_tm/operators.hpp"
#include "oracles.hpp"

namespace {

using namespace floquet_tm;
using oracle::kI;

double max_abs(const ComplexMatrix &m) { return m.cwiseAbs().maxCoeff(); }

TEST(PauliOperator, SingleQubitZ) {
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    EXPECT_EQ(pauli_operator(PauliAxis::Z, 1, 1), expected);
}

TEST(PauliOperator, XOnSecondOfTwo) {
    const ComplexMatrix x2 = pauli_operator(PauliAxis::X, 2, 2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 1) = expected(1, 0) = expected(2, 3) = expected(3, 2) = 1.0;
    EXPECT_EQ(x2, expected);
}

TEST(PauliOperator, ZOnFirstIsMostSignificant) {
    const ComplexMatrix z1 = pauli_operator(PauliAxis::Z, 1, 2);
    const Eigen::Vector4cd diag(1.0, 1.0, -1.0, -1.0);
    EXPECT_EQ(z1, ComplexMatrix(diag.asDiagonal()));
}

TEST(PauliOperator, SiteOutOfRangeThrows) {
    EXPECT_THROW(pauli_operator(PauliAxis::X, 0, 3), ParameterError);
    EXPECT_THROW(pauli_operator(PauliAxis::X, 4, 3), ParameterError);
}

TEST(PauliOperator, PropertiesMatchIndependentEmbedding) {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = gen.integer(1, 5);
        const int site = gen.integer(1, n);
        const char names[] = {'x', 'y', 'z'};
        const int a = gen.integer(0, 2);
        const ComplexMatrix p = pauli_operator(static_cast<PauliAxis>(a), site, n);
        EXPECT_LT(max_abs(p - oracle::pauli_string(n, {{site, names[a]}})), 1e-15);
        EXPECT_LT(hermiticity_error(p), 1e-15);
        EXPECT_LT(unitarity_error(p), 1e-15);
        EXPECT_LT(max_abs(p * p - ComplexMatrix::Identity(p.rows(), p.cols())), 1e-15);
    }
}

TEST(PulseUnitary, PerfectPiPulseIsMinusIX) {
    const std::vector<double> eps{0.0};
    ComplexMatrix expected(2, 2);
    expected << 0.0, -kI, -kI, 0.0;
    EXPECT_LT(max_abs(pulse_unitary(eps) - expected), 1e-16);
}

TEST(PulseUnitary, HalfPiImperfectionIsIdentity) {
    const std::vector<double> eps{std::numbers::pi / 2};
    EXPECT_LT(max_abs(pulse_unitary(eps) - ComplexMatrix::Identity(2, 2)), 1e-16);
}

TEST(PulseUnitary, TwoPerfectPulsesAreMinusXX) {
    const std::vector<double> eps{0.0, 0.0};
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) expected(i, 3 - i) = -1.0;
    EXPECT_LT(max_abs(pulse_unitary(eps) - expected), 1e-16);
}

TEST(PulseUnitary, FactorizesOverQubits) {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto eps = gen.list(gen.integer(1, 5), 0.0, 0.2);
        EXPECT_LT(max_abs(pulse_unitary(eps) - oracle::pulse(eps)), 1e-14);
        EXPECT_LT(unitarity_error(pulse_unitary(eps)), kUnitarityTolerance);
    }
}

TEST(PulseUnitary, RejectsNonFinite) {
    const std::vector<double> eps{0.1, std::nan("")};
    EXPECT_THROW(pulse_unitary(eps), ParameterError);
}

TEST(DriftGenerator, TwoQubitHoppingOnly) {
    const ChainConfig c = ChainConfig::uniform(2, 0.05, 0.0);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(1, 2) = expected(2, 1) = 0.1;
    EXPECT_LT(max_abs(drift_generator(c) - expected), 1e-16);
}

TEST(DriftGenerator, TwoQubitDetuningDiagonal) {
    ChainConfig c = ChainConfig::uniform(2, 0.0, 0.0);
    c.detunings = {0.3, 0.7};
    const Eigen::Vector4cd diag(2 * 0.3 + 2 * 0.7, 2 * 0.3, 2 * 0.7, 0.0);
    EXPECT_LT(max_abs(drift_generator(c) - ComplexMatrix(diag.asDiagonal())), 1e-15);
}

TEST(DriftGenerator, ThreeQubitsMatchPauliStringSum) {
    const ChainConfig c = ChainConfig::uniform(3, 0.05, 0.0);
    EXPECT_LT(max_abs(drift_generator(c) - oracle::drift_generator(c)), 1e-15);
}

TEST(DriftGenerator, RandomChainsMatchPauliStringSum) {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 30; ++trial) {
        const ChainConfig c = gen.config(5);
        const ComplexMatrix phi = drift_generator(c);
        EXPECT_LT(max_abs(phi - oracle::drift_generator(c)), 1e-14);
        EXPECT_LT(hermiticity_error(phi), kHermiticityTolerance);
    }
}

TEST(MatrixExpHermitian, ZeroIsIdentity) {
    EXPECT_LT(max_abs(matrix_exp_hermitian(ComplexMatrix::Zero(4, 4)) -
                      ComplexMatrix::Identity(4, 4)),
              1e-15);
}

TEST(MatrixExpHermitian, HalfPiXIsMinusIX) {
    const ComplexMatrix h = (std::numbers::pi / 2) * pauli_operator(PauliAxis::X, 1, 1);
    ComplexMatrix expected(2, 2);
    expected << 0.0, -kI, -kI, 0.0;
    EXPECT_LT(max_abs(matrix_exp_hermitian(h) - expected), 1e-15);
}

TEST(MatrixExpHermitian, RejectsNonHermitian) {
    ComplexMatrix h = ComplexMatrix::Zero(2, 2);
    h(0, 1) = 1.0;
    EXPECT_THROW(matrix_exp_hermitian(h), ParameterError);
}

TEST(MatrixExpHermitian, AgreesWithTaylorSeries) {
    oracle::Gen gen(14);
    for (int trial = 0; trial < 20; ++trial) {
        const ChainConfig c = gen.config(4);
        const ComplexMatrix h = oracle::drift_generator(c);
        const ComplexMatrix u = matrix_exp_hermitian(h);
        EXPECT_LT(max_abs(u - oracle::expm_taylor(h)), 1e-12);
        EXPECT_LT(unitarity_error(u), kUnitarityTolerance);
    }
}

TEST(DriftUnitary, TwoQubitsMatchClosedForm) {
    oracle::Gen gen(15);
    for (int trial = 0; trial < 20; ++trial) {
        const double g = gen.uniform(0.0, 1.0);
        EXPECT_LT(max_abs(drift_unitary(ChainConfig::uniform(2, g, 0.0)) - oracle::ug(g)), 1e-12)
            << "g=" << g;
    }
}

TEST(TwoQubitUg, Identities) {
    EXPECT_EQ(two_qubit_ug(0.0), ComplexMatrix(ComplexMatrix::Identity(4, 4)));
    const ComplexMatrix swap = two_qubit_ug(std::numbers::pi / 4);
    EXPECT_LT(std::abs(swap(1, 1)), 1e-16);
    EXPECT_LT(std::abs(swap(1, 2) - kI), 1e-16);
    EXPECT_LT(std::abs(swap(2, 1) - kI), 1e-16);
}

TEST(TwoQubitUg, SmallCouplingBlock) {
    const ComplexMatrix u = two_qubit_ug(0.05);
    EXPECT_DOUBLE_EQ(u(1, 1).real(), std::cos(0.1));
    EXPECT_DOUBLE_EQ(u(1, 2).imag(), std::sin(0.1));
    EXPECT_DOUBLE_EQ(u(2, 1).imag(), std::sin(0.1));
    EXPECT_DOUBLE_EQ(u(2, 2).real(), std::cos(0.1));
    EXPECT_EQ(u(0, 0), Complex(1.0));
    EXPECT_EQ(u(3, 3), Complex(1.0));
}

TEST(ComposeFloquet, PerfectPulsesWithoutDrift) {
    const ComplexMatrix f = compose_floquet(ChainConfig::uniform(2, 0.0, 0.0));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) expected(i, 3 - i) = -1.0;
    EXPECT_LT(max_abs(f - expected), 1e-15);
}

TEST(ComposeFloquet, EqualsFactorProduct) {
    const ChainConfig c = ChainConfig::uniform(2, 0.05, 0.0436);
    const ComplexMatrix f = compose_floquet(c);
    EXPECT_LT(max_abs(f - oracle::ug(0.05) * oracle::pulse({0.0436, 0.0436})), 1e-14);
    EXPECT_LT(unitarity_error(f), kUnitarityTolerance);
}

TEST(ComposeFloquet, FinitePulseStaysNearInstantaneous) {
    ChainConfig c = ChainConfig::uniform(2, 0.05, 0.0436);
    const ComplexMatrix inst = compose_floquet(c);
    c.mode = PulseMode::FinitePulse;
    c.pulse_fraction = 0.1;
    const ComplexMatrix fin = compose_floquet(c);
    EXPECT_LT(unitarity_error(fin), kUnitarityTolerance);
    EXPECT_LE(max_abs(fin - inst), std::numbers::pi * 0.05 * 0.1 / 0.9);
}

TEST(ComposeFloquet, FinitePulseMatchesJointExponentialOracle) {
    ChainConfig c = ChainConfig::uniform(3, 0.2, 0.07, 0.1);
    c.mode = PulseMode::FinitePulse;
    c.pulse_fraction = 0.25;
    const ComplexMatrix phi = oracle::drift_generator(c);
    ComplexMatrix a = ComplexMatrix::Zero(8, 8);
    for (int s = 1; s <= 3; ++s)
        a += (std::numbers::pi / 2 - 0.07) * oracle::pauli_string(3, {{s, 'x'}});
    const ComplexMatrix expected =
        oracle::expm_taylor(-phi) * oracle::expm_taylor(a - (0.25 / 0.75) * phi);
    EXPECT_LT(max_abs(compose_floquet(c) - expected), 1e-12);
}

TEST(ComposeFloquet, ZeroFractionFiniteEqualsInstantaneousBitwise) {
    ChainConfig c = ChainConfig::uniform(3, 0.05, 0.0436, 0.2);
    const ComplexMatrix inst = compose_floquet(c);
    c.mode = PulseMode::FinitePulse;
    EXPECT_EQ(compose_floquet(c), inst);
}

TEST(ComposeFloquet, InstantaneousIgnoresFraction) {
    ChainConfig c = ChainConfig::uniform(2, 0.05, 0.0436);
    const ComplexMatrix a = compose_floquet(c);
    c.pulse_fraction = 0.5;
    EXPECT_EQ(compose_floquet(c), a);
}

TEST(ComposeFloquet, RejectsFractionOutOfRange) {
    ChainConfig c = ChainConfig::uniform(2, 0.05, 0.0436);
    c.mode = PulseMode::FinitePulse;
    c.pulse_fraction = 1.0;
    EXPECT_THROW(compose_floquet(c), ParameterError);
    c.pulse_fraction = -0.1;
    EXPECT_THROW(compose_floquet(c), ParameterError);
}

TEST(ComposeFloquet, RejectsMismatchedLists) {
    ChainConfig c = ChainConfig::uniform(3, 0.05, 0.0436);
    c.detunings.pop_back();
    EXPECT_THROW(compose_floquet(c), ParameterError);
}

TEST(ComposeFloquet, UnitaryOnRandomConfigs) {
    oracle::Gen gen(16);
    for (int trial = 0; trial < 50; ++trial) {
        ChainConfig c = gen.config(5);
        if (trial % 2) {
            c.mode = PulseMode::FinitePulse;
            c.pulse_fraction = gen.uniform(0.0, 0.5);
        }
        EXPECT_LT(unitarity_error(compose_floquet(c)), kUnitarityTolerance);
    }
}

TEST(ComposeFloquet, BitwiseReproducible) {
    oracle::Gen gen(17);
    for (int trial = 0; trial < 10; ++trial) {
        const ChainConfig c = gen.config(5);
        EXPECT_EQ(compose_floquet(c), compose_floquet(c));
    }
}

TEST(ComposeFloquet, IdenticalQubitsCommuteWithReversal) {
    oracle::Gen gen(18);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = gen.integer(2, 5);
        ChainConfig c = ChainConfig::uniform(n, gen.uniform(0, 0.3), gen.uniform(0, 0.2),
                                             gen.uniform(-1, 1));
        if (trial % 2) {
            c.mode = PulseMode::FinitePulse;
            c.pulse_fraction = gen.uniform(0.0, 0.5);
        }
        const ComplexMatrix f = compose_floquet(c);
        const ComplexMatrix p = reversal_operator(n);
        EXPECT_LT(max_abs(f * p - p * f), 1e-12);
    }
}

} // namespace
