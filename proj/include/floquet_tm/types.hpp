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
 * Core value types shared by every module: chain configuration, site
 * subsets, matrix aliases and the error hierarchy.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace floquet_tm {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kFormatVersion = "floquet-tm/1";

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Invalid arguments or inconsistent configuration. Maps to CLI exit code 2.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Loss of unitarity, failed eigensolver residuals, norm drift.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requests outside the domain of a closed-form expression (e.g. g = 0).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

enum class PulseMode { Instantaneous, FinitePulse };

inline std::string_view to_string(PulseMode mode) {
    return mode == PulseMode::Instantaneous ? "instantaneous" : "finite";
}

/**
 * @brief Physical parameterization of one driven chain.
 *
 * All quantities are dimensionless accumulated phases per period: the
 * coupling g and detunings delta_i are the phases collected over the drift
 * window, epsilon_i is the pulse imperfection (rotation angle pi - 2 eps_i),
 * and pulse_fraction is t1 / T.
 */
struct ChainConfig {
    int n_qubits = 2;
    double coupling = 0.0;
    std::vector<double> detunings{0.0, 0.0};
    std::vector<double> pulse_imperfections{0.0, 0.0};
    double pulse_fraction = 0.0;
    PulseMode mode = PulseMode::Instantaneous;

    static ChainConfig uniform(int n_qubits, double coupling, double epsilon,
                               double detuning = 0.0) {
        ChainConfig c;
        c.n_qubits = n_qubits;
        c.coupling = coupling;
        c.detunings.assign(static_cast<std::size_t>(std::max(n_qubits, 0)),
                           detuning);
        c.pulse_imperfections.assign(
            static_cast<std::size_t>(std::max(n_qubits, 0)), epsilon);
        return c;
    }

    [[nodiscard]] std::size_t dim() const {
        return std::size_t{1} << static_cast<unsigned>(n_qubits);
    }

    /// True when every qubit shares the same detuning and pulse imperfection.
    [[nodiscard]] bool identical_qubits() const {
        auto all_equal = [](const std::vector<double> &v) {
            return std::adjacent_find(v.begin(), v.end(),
                                      std::not_equal_to<>()) == v.end();
        };
        return all_equal(detunings) && all_equal(pulse_imperfections);
    }

    bool operator==(const ChainConfig &) const = default;
};

/// Dense matrices are capped here; beyond this the 2^N x 2^N storage is
/// impractical.
inline constexpr int kMaxQubits = 14;

inline void validate(const ChainConfig &c) {
    if (c.n_qubits < 1 || c.n_qubits > kMaxQubits) {
        throw ParameterError("n_qubits must lie in [1, " +
                             std::to_string(kMaxQubits) + "], got " +
                             std::to_string(c.n_qubits));
    }
    const auto n = static_cast<std::size_t>(c.n_qubits);
    if (c.detunings.size() != n) {
        throw ParameterError("expected " + std::to_string(n) +
                             " detunings, got " +
                             std::to_string(c.detunings.size()));
    }
    if (c.pulse_imperfections.size() != n) {
        throw ParameterError("expected " + std::to_string(n) +
                             " pulse imperfections, got " +
                             std::to_string(c.pulse_imperfections.size()));
    }
    if (!std::isfinite(c.coupling) || c.coupling < 0.0) {
        throw ParameterError("coupling g must be finite and non-negative");
    }
    for (double d : c.detunings) {
        if (!std::isfinite(d)) throw ParameterError("detuning is not finite");
    }
    for (double e : c.pulse_imperfections) {
        if (!std::isfinite(e))
            throw ParameterError("pulse imperfection is not finite");
    }
    if (!std::isfinite(c.pulse_fraction) || c.pulse_fraction < 0.0 ||
        c.pulse_fraction >= 1.0) {
        throw ParameterError("pulse fraction must lie in [0, 1)");
    }
}

/**
 * @brief Sorted set of 1-based qubit sites, used for bipartitions.
 */
class SiteSet {
  public:
    SiteSet() = default;
    explicit SiteSet(std::vector<int> sites) : sites_(std::move(sites)) {
        std::sort(sites_.begin(), sites_.end());
        sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    }

    /// Single-site block {1}.
    static SiteSet first() { return SiteSet({1}); }

    /// Half-chain block {1..floor(N/2)}; for N = 1 this is {1}.
    static SiteSet half_chain(int n_qubits) {
        std::vector<int> s;
        for (int i = 1; i <= std::max(1, n_qubits / 2); ++i) s.push_back(i);
        return SiteSet(std::move(s));
    }

    [[nodiscard]] SiteSet complement(int n_qubits) const {
        std::vector<int> s;
        for (int i = 1; i <= n_qubits; ++i) {
            if (!contains(i)) s.push_back(i);
        }
        return SiteSet(std::move(s));
    }

    [[nodiscard]] bool contains(int site) const {
        return std::binary_search(sites_.begin(), sites_.end(), site);
    }

    /// Throws unless the set is a nonempty proper subset of {1..N}.
    void validate_proper_subset(int n_qubits) const {
        if (sites_.empty()) throw ParameterError("site subset is empty");
        if (sites_.front() < 1 || sites_.back() > n_qubits) {
            throw ParameterError("site subset out of range [1, " +
                                 std::to_string(n_qubits) + "]");
        }
        if (static_cast<int>(sites_.size()) >= n_qubits) {
            throw ParameterError("site subset must be a proper subset");
        }
    }

    [[nodiscard]] const std::vector<int> &sites() const { return sites_; }
    [[nodiscard]] std::size_t size() const { return sites_.size(); }
    [[nodiscard]] bool empty() const { return sites_.empty(); }

    bool operator==(const SiteSet &) const = default;

  private:
    std::vector<int> sites_;
};

/// Bit of `site` (1-based, site 1 = most significant) in basis index b.
inline unsigned site_bit(std::size_t b, int site, int n_qubits) {
    return static_cast<unsigned>((b >> (n_qubits - site)) & 1u);
}

/// Number of qubits for a state or operator dimension; throws unless
/// dim is a power of two.
inline int qubits_for_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw ParameterError("dimension " + std::to_string(dim) +
                             " is not a power of two");
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

} // namespace floquet_tm
