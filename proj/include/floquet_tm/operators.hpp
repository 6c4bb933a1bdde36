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
/**
 * @file
 * Operator construction: Pauli embeddings, the imperfect pi-pulse, the drift
 * phase generator and the one-period Floquet operator.
 *
 * Basis convention: qubit 1 is the most significant bit, so for two qubits
 * the basis order is |uu>, |ud>, |du>, |dd> and sigma_z |u> = +|u>.
 */
#pragma once

#include <numbers>
#include <span>
#include <string>

#include <Eigen/Eigenvalues>

#include "types.hpp"

namespace floquet_tm {

enum class PauliAxis { X, Y, Z };

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;

/// Max-abs entry of U^dagger U - I.
inline double unitarity_error(const ComplexMatrix &u) {
    const auto n = u.rows();
    return (u.adjoint() * u - ComplexMatrix::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

/// Max-abs entry of H - H^dagger.
inline double hermiticity_error(const ComplexMatrix &h) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

inline ComplexMatrix pauli_matrix(PauliAxis axis) {
    ComplexMatrix m(2, 2);
    const Complex i{0.0, 1.0};
    switch (axis) {
    case PauliAxis::X:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case PauliAxis::Y:
        m << 0.0, -i, i, 0.0;
        break;
    case PauliAxis::Z:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return m;
}

/// Kronecker product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) =
                a(r, c) * b;
        }
    }
    return out;
}

/**
 * @brief Pauli operator on a single site of an N-qubit register,
 * I (x) ... (x) sigma_axis (x) ... (x) I.
 *
 * @param site 1-based site index.
 */
inline ComplexMatrix pauli_operator(PauliAxis axis, int site, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ParameterError("n_qubits out of range");
    }
    if (site < 1 || site > n_qubits) {
        throw ParameterError("site " + std::to_string(site) +
                             " outside [1, " + std::to_string(n_qubits) +
                             "]");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int s = 1; s <= n_qubits; ++s) {
        out = kron(out, s == site ? pauli_matrix(axis)
                                  : ComplexMatrix::Identity(2, 2));
    }
    return out;
}

/// [[sin e, -i cos e], [-i cos e, sin e]] = exp(-i (pi/2 - e) sigma_x).
inline ComplexMatrix single_qubit_pulse(double epsilon) {
    const Complex s{std::sin(epsilon), 0.0};
    const Complex c{0.0, -std::cos(epsilon)};
    ComplexMatrix m(2, 2);
    m << s, c, c, s;
    return m;
}

/// Tensor product of per-qubit imperfect pi-pulses, qubit 1 leftmost.
inline ComplexMatrix pulse_unitary(std::span<const double> pulse_imperfections) {
    if (pulse_imperfections.empty() ||
        pulse_imperfections.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw ParameterError("pulse needs between 1 and " +
                             std::to_string(kMaxQubits) + " qubits");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (double e : pulse_imperfections) {
        if (!std::isfinite(e))
            throw ParameterError("pulse imperfection is not finite");
        out = kron(out, single_qubit_pulse(e));
    }
    return out;
}

/**
 * @brief Drift phase generator
 *   Phi = sum_i delta_i (sigma_z,i + 1)
 *       + g sum_<i,j> (sigma_x,i sigma_x,j + sigma_y,i sigma_y,j)
 * on an open nearest-neighbour chain, built directly in the computational
 * basis.
 *
 * The XY term is 2g between basis states related by exchanging an
 * adjacent |ud> <-> |du> pair.
 */
inline ComplexMatrix drift_generator(const ChainConfig &config) {
    validate(config);
    const int n = config.n_qubits;
    const auto dim = config.dim();
    ComplexMatrix phi = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int site = 1; site <= n; ++site) {
            // sigma_z + 1 is 2 on up (bit 0), 0 on down.
            if (site_bit(b, site, n) == 0u)
                diag += 2.0 * config.detunings[site - 1];
        }
        phi(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = diag;
        for (int site = 1; site < n; ++site) {
            if (site_bit(b, site, n) == site_bit(b, site + 1, n)) continue;
            const std::size_t mask = (std::size_t{1} << (n - site)) |
                                     (std::size_t{1} << (n - site - 1));
            phi(static_cast<Eigen::Index>(b ^ mask),
                static_cast<Eigen::Index>(b)) += 2.0 * config.coupling;
        }
    }
    return phi;
}

/**
 * @brief exp(-i H) for Hermitian H via the spectral decomposition.
 *
 * Throws ParameterError when H deviates from Hermitian by more than
 * kHermiticityTolerance (max-abs).
 */
inline ComplexMatrix matrix_exp_hermitian(const ComplexMatrix &h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ParameterError("matrix_exp_hermitian needs a nonempty square matrix");
    }
    const double herr = hermiticity_error(h);
    if (!(herr <= kHermiticityTolerance)) {
        throw ParameterError("generator is not Hermitian (deviation " +
                             std::to_string(herr) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver failed to converge");
    }
    const auto &v = solver.eigenvectors();
    const Eigen::VectorXcd phases =
        (solver.eigenvalues().cast<Complex>() * Complex{0.0, -1.0})
            .array()
            .exp();
    return v * phases.asDiagonal() * v.adjoint();
}

/// Closed-form two-qubit interaction propagator: identity on |uu>, |dd> and
/// [[cos 2g, i sin 2g], [i sin 2g, cos 2g]] on the |ud>, |du> block.
inline ComplexMatrix two_qubit_ug(double g) {
    ComplexMatrix u = ComplexMatrix::Identity(4, 4);
    const Complex c{std::cos(2.0 * g), 0.0};
    const Complex s{0.0, std::sin(2.0 * g)};
    u(1, 1) = c;
    u(1, 2) = s;
    u(2, 1) = s;
    u(2, 2) = c;
    return u;
}

/**
 * @brief Drift propagator over the free-evolution window.
 *
 * Sign convention: the propagator is exp(+i Phi), which reproduces the
 * closed-form two_qubit_ug(g) for N = 2 and places the two-qubit
 * quasienergies at {0, 2g, eps_FL, -(eps_FL + 2g)}. The opposite sign gives
 * the complex-conjugate (Z-string rotated) dynamics, so polarization and
 * entropy traces are identical either way.
 */
inline ComplexMatrix drift_unitary(const ChainConfig &config) {
    return matrix_exp_hermitian(-drift_generator(config));
}

/// Pulse generator sum_i (pi/2 - eps_i) sigma_x,i, whose exp(-i .) is the
/// imperfect pi-pulse.
inline ComplexMatrix pulse_generator(const ChainConfig &config) {
    validate(config);
    const auto dim = static_cast<Eigen::Index>(config.dim());
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int site = 1; site <= config.n_qubits; ++site) {
        a += (std::numbers::pi / 2.0 - config.pulse_imperfections[site - 1]) *
             pauli_operator(PauliAxis::X, site, config.n_qubits);
    }
    return a;
}

/**
 * @brief One-period Floquet operator.
 *
 * Instantaneous: F = D * U_eps, with D = drift_unitary(config).
 * FinitePulse:   F = D * exp(-i [A - r/(1-r) Phi]), where A is the pulse
 *                generator and the drift keeps acting at its physical rate
 *                during the pulse window r = t1/T. With r = 0 this takes the
 *                instantaneous path so both modes agree bitwise.
 */
inline ComplexMatrix compose_floquet(const ChainConfig &config) {
    validate(config);
    const ComplexMatrix drift = drift_unitary(config);
    if (config.mode == PulseMode::FinitePulse && config.pulse_fraction > 0.0) {
        const double r = config.pulse_fraction;
        // Drift sign matches drift_unitary: exp(+i Phi) over the free window.
        const ComplexMatrix joint =
            pulse_generator(config) - (r / (1.0 - r)) * drift_generator(config);
        return drift * matrix_exp_hermitian(joint);
    }
    return drift * pulse_unitary(config.pulse_imperfections);
}

/// Operator reversing the qubit order, |b_1 ... b_N> -> |b_N ... b_1>.
inline ComplexMatrix reversal_operator(int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        std::size_t r = 0;
        for (int k = 0; k < n_qubits; ++k) {
            if ((b >> k) & 1u) r |= std::size_t{1} << (n_qubits - 1 - k);
        }
        p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return p;
}

} // namespace floquet_tm
