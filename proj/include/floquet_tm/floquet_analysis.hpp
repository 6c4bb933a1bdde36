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
 * Floquet spectral analysis: numerical quasienergy spectra, the closed-form
 * two-qubit spectrum, and the commensurability ratio xi_k that predicts
 * time-molecule formation.
 *
 * Eigenphases theta are defined by F v = exp(-i theta) v and reported in
 * (-pi, pi].
 */
#pragma once

#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "types.hpp"

namespace floquet_tm {

inline constexpr double kSpectrumResidualLimit = 1e-8;
/// Analytic two-qubit results are first order in (eps, g).
inline constexpr double kAnalyticValidityLimit = 0.1;

enum class SpectrumSource { Numerical, AnalyticTwoQubit };

struct QuasienergySpectrum {
    /// Ascending, each in (-pi, pi].
    std::vector<double> eigenphases;
    /// Column j pairs with eigenphases[j]; orthonormal.
    ComplexMatrix eigenvectors;
    SpectrumSource source = SpectrumSource::Numerical;
    /// Analytic spectrum only: eps = 0, where psi_3/psi_4 take their limits.
    bool degenerate = false;
    /// Analytic spectrum only: eps or g above kAnalyticValidityLimit.
    bool outside_validity = false;
};

/// Maps any real phase into (-pi, pi].
inline double wrap_phase(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::remainder(theta, two_pi); // [-pi, pi]
    if (t <= -std::numbers::pi) t += two_pi;
    return t;
}

/// Shortest distance between two phases on the circle.
inline double circular_distance(double a, double b) {
    return std::abs(wrap_phase(a - b));
}

/**
 * @brief Reorders `other` to best match the ascending phases of `reference`
 * on the circle (bottleneck metric).
 *
 * Both sets are sorted and every cyclic alignment is tried; for points on a
 * circle the optimal bottleneck matching is one of these rotations.
 */
inline std::vector<double> align_phases(std::span<const double> reference,
                                        std::span<const double> other) {
    if (reference.size() != other.size()) {
        throw ParameterError("spectra have different sizes");
    }
    std::vector<double> x(reference.begin(), reference.end());
    std::vector<double> y(other.begin(), other.end());
    for (double &v : x) v = wrap_phase(v);
    for (double &v : y) v = wrap_phase(v);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const std::size_t n = x.size();
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_shift = 0;
    for (std::size_t shift = 0; shift < n; ++shift) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n && worst < best; ++i) {
            worst = std::max(worst, circular_distance(x[i], y[(i + shift) % n]));
        }
        if (worst < best) {
            best = worst;
            best_shift = shift;
        }
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = y[(i + best_shift) % n];
    return out;
}

/// Bottleneck distance between two phase multisets on the circle.
inline double spectrum_distance(std::span<const double> a,
                                std::span<const double> b) {
    const std::vector<double> b_aligned = align_phases(a, b);
    std::vector<double> x(a.begin(), a.end());
    for (double &v : x) v = wrap_phase(v);
    std::sort(x.begin(), x.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, circular_distance(x[i], b_aligned[i]));
    }
    return worst;
}

namespace detail {

/// Rotates v so that its first component with non-negligible magnitude is
/// real and positive.
inline void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-8 * scale) {
            v *= std::conj(v(k)) / std::abs(v(k));
            v(k) = Complex{std::abs(v(k)), 0.0};
            return;
        }
    }
}

inline bool lexicographic_less(const Eigen::VectorXcd &a,
                               const Eigen::VectorXcd &b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
        if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
    }
    return false;
}

/// Sorts (phase, vector) pairs by phase, then lexicographically.
inline void sort_spectrum(QuasienergySpectrum &spec) {
    const auto n = spec.eigenphases.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (spec.eigenphases[i] != spec.eigenphases[j])
            return spec.eigenphases[i] < spec.eigenphases[j];
        return lexicographic_less(spec.eigenvectors.col(static_cast<Eigen::Index>(i)),
                                  spec.eigenvectors.col(static_cast<Eigen::Index>(j)));
    });
    QuasienergySpectrum sorted = spec;
    for (std::size_t k = 0; k < n; ++k) {
        sorted.eigenphases[k] = spec.eigenphases[order[k]];
        sorted.eigenvectors.col(static_cast<Eigen::Index>(k)) =
            spec.eigenvectors.col(static_cast<Eigen::Index>(order[k]));
    }
    spec = std::move(sorted);
}

} // namespace detail

/// Max over j of |F v_j - exp(-i theta_j) v_j|.
inline double spectrum_residual(const ComplexMatrix &floquet,
                                const QuasienergySpectrum &spec) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < spec.eigenvectors.cols(); ++j) {
        const Eigen::VectorXcd v = spec.eigenvectors.col(j);
        const Complex lambda = std::polar(1.0, -spec.eigenphases[static_cast<std::size_t>(j)]);
        worst = std::max(worst, (floquet * v - lambda * v).norm());
    }
    return worst;
}

/**
 * @brief Full eigendecomposition of a unitary Floquet operator.
 *
 * A unitary matrix is normal, so its complex Schur form is diagonal and the
 * Schur vectors are an orthonormal eigenbasis, degenerate subspaces
 * included. Each vector gets the phase convention of detail::fix_phase and
 * the pairs are sorted by eigenphase.
 *
 * Throws NumericalError when the residual exceeds kSpectrumResidualLimit.
 */
inline QuasienergySpectrum quasienergy_spectrum(const ComplexMatrix &floquet) {
    if (floquet.rows() != floquet.cols() || floquet.rows() == 0) {
        throw ParameterError("Floquet operator must be square and nonempty");
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(floquet);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("Schur decomposition failed to converge");
    }
    QuasienergySpectrum spec;
    spec.source = SpectrumSource::Numerical;
    spec.eigenvectors = schur.matrixU();
    const auto &t = schur.matrixT();
    spec.eigenphases.resize(static_cast<std::size_t>(t.rows()));
    for (Eigen::Index j = 0; j < t.rows(); ++j) {
        spec.eigenphases[static_cast<std::size_t>(j)] = wrap_phase(-std::arg(t(j, j)));
        detail::fix_phase(spec.eigenvectors.col(j));
    }
    detail::sort_spectrum(spec);
    const double residual = spectrum_residual(floquet, spec);
    if (residual > kSpectrumResidualLimit) {
        throw NumericalError("eigensolver residual " + std::to_string(residual) +
                             " exceeds limit");
    }
    return spec;
}

/// eps_FL = pi - g - sqrt(g^2 + 4 eps^2).
inline double epsilon_fl(double epsilon, double g) {
    return std::numbers::pi - g - std::sqrt(g * g + 4.0 * epsilon * epsilon);
}

/// beta = (g + sqrt(g^2 + 4 eps^2)) / (2 eps); infinite at eps = 0.
inline double analytic_beta(double epsilon, double g) {
    return (g + std::sqrt(g * g + 4.0 * epsilon * epsilon)) / (2.0 * epsilon);
}

/**
 * @brief Closed-form quasienergies and Floquet eigenvectors of two identical
 * qubits, valid for eps, g << 1.
 *
 * Phases and vectors (basis |uu>, |ud>, |du>, |dd>):
 *  - 0:               psi_1 = (|uu> - |dd>)/sqrt 2
 *  - 2g:              psi_2 = (|ud> - |du>)/sqrt 2
 *  - eps_FL:          psi_4 ~ |uu> + |dd> + beta (|ud> + |du>)
 *  - -(eps_FL + 2g):  psi_3 ~ |uu> + |dd> - (|ud> + |du>)/beta
 *
 * At eps = 0 the last two take their beta -> infinity limits
 * (|ud> + |du>)/sqrt 2 and (|uu> + |dd>)/sqrt 2, and `degenerate` is set.
 * `outside_validity` flags eps or g above kAnalyticValidityLimit.
 */
inline QuasienergySpectrum analytic_two_qubit_spectrum(double epsilon,
                                                       double g) {
    if (!std::isfinite(epsilon) || !std::isfinite(g)) {
        throw ParameterError("eps and g must be finite");
    }
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double efl = epsilon_fl(epsilon, g);

    QuasienergySpectrum spec;
    spec.source = SpectrumSource::AnalyticTwoQubit;
    spec.outside_validity = std::abs(epsilon) > kAnalyticValidityLimit ||
                            std::abs(g) > kAnalyticValidityLimit;
    spec.eigenphases = {wrap_phase(0.0), wrap_phase(2.0 * g), wrap_phase(efl),
                        wrap_phase(-(efl + 2.0 * g))};
    spec.eigenvectors = ComplexMatrix::Zero(4, 4);
    auto &v = spec.eigenvectors;
    v(0, 0) = inv_sqrt2;
    v(3, 0) = -inv_sqrt2;
    v(1, 1) = inv_sqrt2;
    v(2, 1) = -inv_sqrt2;

    if (epsilon == 0.0) {
        spec.degenerate = true;
        v(1, 2) = v(2, 2) = inv_sqrt2;
        v(0, 3) = v(3, 3) = inv_sqrt2;
    } else {
        const double beta = analytic_beta(epsilon, g);
        const double norm = std::sqrt(2.0 * (1.0 + beta * beta));
        // psi_4 at eps_FL
        v(0, 2) = v(3, 2) = 1.0 / norm;
        v(1, 2) = v(2, 2) = beta / norm;
        // psi_3 at -(eps_FL + 2g)
        v(0, 3) = v(3, 3) = beta / norm;
        v(1, 3) = v(2, 3) = -1.0 / norm;
    }
    for (Eigen::Index j = 0; j < 4; ++j) detail::fix_phase(v.col(j));
    detail::sort_spectrum(spec);
    return spec;
}

/**
 * @brief Commensurability ratio xi_k = (k+1)(pi - eps_FL)/g
 *      = (k+1)(g + sqrt(g^2 + 4 eps^2))/g.
 */
inline double xi(int k, double epsilon, double g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("xi is undefined for g <= 0");
    }
    if (k < 1) throw DomainError("commensurability parameter k must be >= 1");
    return static_cast<double>(k + 1) *
           (g + std::sqrt(g * g + 4.0 * epsilon * epsilon)) / g;
}

struct TmPrediction {
    int k = 1;
    int ell = 0;
    double epsilon = 0.0;
    double xi_value = 0.0;
    /// omega_1 T = pi - eps_FL.
    double omega1_t = 0.0;
    /// omega_2 T = 2g.
    double omega2_t = 0.0;
};

/**
 * @brief Pulse imperfection at which xi_k(eps, g) equals the even integer ell:
 * eps = (g/2) sqrt((ell/(k+1) - 1)^2 - 1).
 *
 * ell/(k+1) = 2 is the degenerate boundary eps = 0; smaller ratios have no
 * solution and throw DomainError, as do odd ell and g <= 0.
 */
inline TmPrediction tm_epsilon_for(int k, int ell, double g) {
    if (k < 1) throw DomainError("commensurability parameter k must be >= 1");
    if (ell % 2 != 0) throw DomainError("ell must be even");
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DomainError("commensurability condition needs g > 0");
    }
    if (ell < 2 * (k + 1)) {
        throw DomainError("xi_" + std::to_string(k) + " >= " +
                          std::to_string(2 * (k + 1)) + ", cannot equal " +
                          std::to_string(ell));
    }
    const double ratio = static_cast<double>(ell) / static_cast<double>(k + 1);
    const double radicand = (ratio - 1.0) * (ratio - 1.0) - 1.0;
    TmPrediction p;
    p.k = k;
    p.ell = ell;
    p.epsilon = 0.5 * g * std::sqrt(std::max(radicand, 0.0));
    p.xi_value = xi(k, p.epsilon, g);
    p.omega1_t = std::numbers::pi - epsilon_fl(p.epsilon, g);
    p.omega2_t = 2.0 * g;
    return p;
}

/// Coefficients c_j = <v_j|psi> in the spectrum's eigenbasis.
inline Eigen::VectorXcd eigen_overlaps(const StateVector &psi,
                                       const QuasienergySpectrum &spectrum) {
    if (spectrum.eigenvectors.rows() != psi.size()) {
        throw ParameterError("state and spectrum dimensions differ");
    }
    return spectrum.eigenvectors.adjoint() * psi;
}

} // namespace floquet_tm
