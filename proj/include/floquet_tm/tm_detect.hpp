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
 * Time-molecule detection: flat near-zero-polarization runs in a
 * stroboscopic trace, labelled by their commensurability group.
 */
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dynamics.hpp"
#include "floquet_analysis.hpp"

namespace floquet_tm {

struct TmLabel {
    int k = 0;
    int l = 0;
    bool operator==(const TmLabel &) const = default;
};

struct TmInterval {
    int n_start = 0;
    int n_end = 0;
    double mean_abs_polarization = 0.0;
    double mean_entropy = 0.0;
    std::optional<TmLabel> label;

    [[nodiscard]] int duration() const { return n_end - n_start + 1; }
    [[nodiscard]] double center() const {
        return 0.5 * static_cast<double>(n_start + n_end);
    }

    bool operator==(const TmInterval &) const = default;
};

struct DetectionParams {
    /// Minimum run length W, in periods.
    int window = 10;
    /// |<sigma_z>| must stay strictly below this on every step of a run.
    double threshold = 0.15;
    /// Minimum mean entropy of a run; ignored when the trace has no entropy.
    double entropy_floor = 0.6;

    /// W = 10, tau = 0.075 N, entropy floor 0.6 (0 without entropy data).
    static DetectionParams defaults_for(int n_qubits, bool has_entropy = true) {
        DetectionParams p;
        p.threshold = 0.075 * static_cast<double>(n_qubits);
        p.entropy_floor = has_entropy ? 0.6 : 0.0;
        return p;
    }
};

/**
 * @brief Maximal runs of consecutive steps with |<sigma_z>| < threshold,
 * at least `window` long and, when entropy is recorded, with mean entropy
 * at or above `entropy_floor`. Sorted by n_start.
 *
 * Traces shorter than the window yield an empty list.
 */
inline std::vector<TmInterval> detect_flat_regions(const StroboscopicTrace &trace,
                                                   const DetectionParams &params) {
    if (params.window < 2) throw ParameterError("detection window must be >= 2");
    if (!(params.threshold > 0.0)) {
        throw ParameterError("detection threshold must be positive");
    }
    const std::size_t len = trace.polarization.size();
    if (trace.has_entropy() && trace.entropy.size() != len) {
        throw ParameterError("trace series lengths differ");
    }
    if (trace.steps.size() != len) {
        throw ParameterError("trace series lengths differ");
    }

    std::vector<TmInterval> out;
    std::size_t i = 0;
    while (i < len) {
        if (!(std::abs(trace.polarization[i]) < params.threshold)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < len && std::abs(trace.polarization[j + 1]) < params.threshold)
            ++j;
        const std::size_t run = j - i + 1;
        if (run >= static_cast<std::size_t>(params.window)) {
            TmInterval iv;
            iv.n_start = trace.steps[i];
            iv.n_end = trace.steps[j];
            double pol = 0.0;
            double ent = 0.0;
            for (std::size_t m = i; m <= j; ++m) {
                pol += std::abs(trace.polarization[m]);
                if (trace.has_entropy()) ent += trace.entropy[m];
            }
            iv.mean_abs_polarization = pol / static_cast<double>(run);
            iv.mean_entropy = ent / static_cast<double>(run);
            if (!trace.has_entropy() || iv.mean_entropy >= params.entropy_floor) {
                out.push_back(iv);
            }
        }
        i = j + 1;
    }
    return out;
}

/// Distance from x to the nearest even integer.
inline double distance_to_even(double x) {
    return std::abs(x - 2.0 * std::round(0.5 * x));
}

/// Group-matching radius on |xi_k - nearest even integer|.
inline constexpr double kGroupMatchRadius = 0.5;

/**
 * @brief Commensurability group for (eps, g): the k <= k_max whose xi_k lies
 * closest to an even integer, or nullopt when none is within
 * kGroupMatchRadius.
 */
inline std::optional<int> commensurability_group(double epsilon, double g,
                                                 int k_max) {
    std::optional<int> best;
    double best_dist = kGroupMatchRadius;
    for (int k = 1; k <= k_max; ++k) {
        const double d = distance_to_even(xi(k, epsilon, g));
        if (d <= best_dist && (!best || d < best_dist)) {
            best = k;
            best_dist = d;
        }
    }
    return best;
}

/**
 * @brief Labels intervals (k, l): k from commensurability_group, l = 1, 2, ...
 * in time order. Intervals stay unlabelled when no group matches.
 */
inline std::vector<TmInterval> label_intervals(std::vector<TmInterval> intervals,
                                               double g, double epsilon,
                                               int k_max) {
    if (intervals.empty()) return intervals;
    if (!(g > 0.0)) throw DomainError("labelling needs g > 0");
    std::sort(intervals.begin(), intervals.end(),
              [](const TmInterval &a, const TmInterval &b) {
                  return a.n_start < b.n_start;
              });
    const auto group = commensurability_group(epsilon, g, k_max);
    int l = 0;
    for (auto &iv : intervals) {
        if (group) {
            iv.label = TmLabel{*group, ++l};
        } else {
            iv.label.reset();
        }
    }
    return intervals;
}

} // namespace floquet_tm
