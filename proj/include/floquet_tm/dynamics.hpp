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
 * Stroboscopic evolution Psi(nT) = F^n Psi(0) and the two observables
 * recorded every period: total polarization and entanglement entropy.
 */
#pragma once

#include <bit>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "types.hpp"

namespace floquet_tm {

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kNormDriftLimit = 1e-8;
inline constexpr double kEntropyClamp = 1e-12;

/// |uu...u>: unit amplitude on basis index 0.
inline StateVector initial_ferromagnetic_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ParameterError("n_qubits out of range");
    }
    StateVector psi = StateVector::Zero(Eigen::Index{1} << n_qubits);
    psi(0) = 1.0;
    return psi;
}

/// <Psi| sum_i sigma_z,i |Psi>, evaluated on the diagonal:
/// sum_b |psi_b|^2 (N - 2 popcount(b)).
inline double total_polarization(const StateVector &psi) {
    const int n = qubits_for_dim(static_cast<std::size_t>(psi.size()));
    double acc = 0.0;
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        const int downs = std::popcount(static_cast<std::uint64_t>(b));
        acc += std::norm(psi(b)) * static_cast<double>(n - 2 * downs);
    }
    return acc;
}

/// <sigma_z,i> for each site i = 1..N.
inline std::vector<double> site_polarizations(const StateVector &psi) {
    const int n = qubits_for_dim(static_cast<std::size_t>(psi.size()));
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        const double p = std::norm(psi(b));
        for (int site = 1; site <= n; ++site) {
            out[site - 1] += site_bit(static_cast<std::size_t>(b), site, n)
                                 ? -p
                                 : p;
        }
    }
    return out;
}

/**
 * @brief Reduced density matrix of the sites in `keep`, tracing out the rest.
 *
 * Uses rho = |psi><psi| so (rho_A)_{a a'} = sum_e psi_{a e} conj(psi_{a' e}).
 * The kept sites form the row index with the lowest kept site as the most
 * significant bit.
 */
inline ComplexMatrix reduced_density_matrix(const StateVector &psi,
                                            const SiteSet &keep) {
    const int n = qubits_for_dim(static_cast<std::size_t>(psi.size()));
    keep.validate_proper_subset(n);
    const SiteSet traced = keep.complement(n);
    const auto dim_keep = Eigen::Index{1} << keep.size();
    const auto dim_env = Eigen::Index{1} << traced.size();

    // m(a, e) = psi(b) where b interleaves kept bits a and traced bits e.
    ComplexMatrix m(dim_keep, dim_env);
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        Eigen::Index a = 0;
        Eigen::Index e = 0;
        for (int site = 1; site <= n; ++site) {
            const auto bit = site_bit(static_cast<std::size_t>(b), site, n);
            if (keep.contains(site)) {
                a = (a << 1) | bit;
            } else {
                e = (e << 1) | bit;
            }
        }
        m(a, e) = psi(b);
    }
    return m * m.adjoint();
}

/// -sum_i p_i ln p_i over the eigenvalues of a density matrix, clamped
/// to [0, 1]; 0 ln 0 := 0.
inline double von_neumann_entropy(const ComplexMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho,
                                                        Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("density-matrix eigensolver failed");
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
        if (p > kEntropyClamp) s -= p * std::log(p);
    }
    return s;
}

/// Von Neumann entropy (natural log) of the block `keep`.
inline double entanglement_entropy(const StateVector &psi, const SiteSet &keep) {
    return von_neumann_entropy(reduced_density_matrix(psi, keep));
}

/// Per-period records. All populated series share length n_max + 1.
struct StroboscopicTrace {
    std::vector<int> steps;
    std::vector<double> polarization;
    std::vector<double> entropy;
    /// Row n holds <sigma_z,i>(nT), i = 1..N; empty unless requested.
    std::vector<std::vector<double>> per_site_polarization;
    /// Row n holds <v_j|Psi(nT)> for the supplied eigenbasis; empty unless
    /// requested.
    std::vector<std::vector<Complex>> eigen_overlaps;

    [[nodiscard]] std::size_t size() const { return steps.size(); }
    [[nodiscard]] bool has_entropy() const { return !entropy.empty(); }

    bool operator==(const StroboscopicTrace &) const = default;
};

struct TraceOptions {
    SiteSet entropy_block = SiteSet::first();
    bool per_site = false;
    /// Columns are the basis states whose overlaps are recorded each period.
    std::optional<ComplexMatrix> overlap_basis;
};

/**
 * @brief Applies F by repeated matrix-vector products, recording the
 * observables at n = 0..n_max.
 *
 * Throws ParameterError on dimension mismatch or an unnormalized input and
 * NumericalError once the norm drifts by more than kNormDriftLimit. For a
 * single qubit there is no bipartition and the entropy series is all zero.
 */
inline StroboscopicTrace evolve(const ComplexMatrix &floquet,
                                const StateVector &psi0, int n_max,
                                const TraceOptions &options = {}) {
    if (floquet.rows() != floquet.cols()) {
        throw ParameterError("Floquet operator is not square");
    }
    if (floquet.rows() != psi0.size()) {
        throw ParameterError("state dimension " + std::to_string(psi0.size()) +
                             " does not match operator dimension " +
                             std::to_string(floquet.rows()));
    }
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    const int n_qubits = qubits_for_dim(static_cast<std::size_t>(psi0.size()));
    if (std::abs(psi0.norm() - 1.0) > kNormTolerance) {
        throw ParameterError("initial state is not normalized");
    }
    if (n_qubits > 1) options.entropy_block.validate_proper_subset(n_qubits);
    if (options.overlap_basis && options.overlap_basis->rows() != psi0.size()) {
        throw ParameterError("overlap basis dimension mismatch");
    }

    StroboscopicTrace trace;
    const auto len = static_cast<std::size_t>(n_max) + 1;
    trace.steps.reserve(len);
    trace.polarization.reserve(len);
    trace.entropy.reserve(len);

    StateVector psi = psi0;
    StateVector next(psi.size());
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            next.noalias() = floquet * psi;
            psi.swap(next);
            const double drift = std::abs(psi.norm() - 1.0);
            if (drift > kNormDriftLimit) {
                throw NumericalError("norm drift " + std::to_string(drift) +
                                     " at step " + std::to_string(n));
            }
        }
        trace.steps.push_back(n);
        trace.polarization.push_back(total_polarization(psi));
        trace.entropy.push_back(
            n_qubits > 1 ? entanglement_entropy(psi, options.entropy_block)
                         : 0.0);
        if (options.per_site) {
            trace.per_site_polarization.push_back(site_polarizations(psi));
        }
        if (options.overlap_basis) {
            const StateVector c = options.overlap_basis->adjoint() * psi;
            trace.eigen_overlaps.emplace_back(c.data(), c.data() + c.size());
        }
    }
    return trace;
}

} // namespace floquet_tm
