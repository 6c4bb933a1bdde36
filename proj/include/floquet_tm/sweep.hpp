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
 * One-parameter sweeps over chain configurations. Rows are independent
 * trajectories computed in parallel and written to preallocated slots, so
 * the grid is bitwise independent of the worker count.
 */
#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "dynamics.hpp"
#include "floquet_analysis.hpp"
#include "operators.hpp"

namespace floquet_tm {

enum class SweepAxis { EpsilonUniform, EpsilonAdd, Coupling, DeltaSite };

inline std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::EpsilonUniform:
        return "epsilon_uniform";
    case SweepAxis::EpsilonAdd:
        return "epsilon_add";
    case SweepAxis::Coupling:
        return "g";
    case SweepAxis::DeltaSite:
        return "delta_site";
    }
    return "";
}

/// Column header used for the swept value in serialized grids.
inline std::string_view value_column(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::EpsilonUniform:
        return "epsilon";
    case SweepAxis::EpsilonAdd:
        return "epsilon_add";
    case SweepAxis::Coupling:
        return "g";
    case SweepAxis::DeltaSite:
        return "delta";
    }
    return "";
}

inline SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "epsilon_uniform" || name == "epsilon") return SweepAxis::EpsilonUniform;
    if (name == "epsilon_add") return SweepAxis::EpsilonAdd;
    if (name == "g") return SweepAxis::Coupling;
    if (name == "delta_site" || name == "delta") return SweepAxis::DeltaSite;
    throw ParameterError("unknown sweep axis '" + std::string(name) + "'");
}

struct SweepSpec {
    ChainConfig base;
    SweepAxis axis = SweepAxis::EpsilonUniform;
    std::vector<double> values;
    int n_max = 150;
    SiteSet entropy_block = SiteSet::first();
    /// Per-row traces from run_row carry Floquet-eigenbasis overlaps; the
    /// grid itself stores polarization and entropy only.
    bool record_overlaps = false;
    /// Pulse spread added on even sites (2, 4, ...) for the epsilon_uniform
    /// axis: eps_odd = value, eps_even = value + epsilon_add.
    double epsilon_add = 0.0;
    /// 1-based site whose detuning the delta_site axis sets; 0 = last site.
    int delta_site = 0;
};

/// n_points evenly spaced values on [lo, hi]; a single point yields {lo}.
inline std::vector<double> linspace(double lo, double hi, int n_points) {
    if (n_points < 1) throw ParameterError("need at least one sweep point");
    std::vector<double> v(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        v[static_cast<std::size_t>(i)] =
            n_points == 1 ? lo
                          : lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(n_points - 1);
    }
    return v;
}

/// The chain configuration of the row with swept value `value`.
inline ChainConfig config_for_value(const SweepSpec &spec, double value) {
    ChainConfig c = spec.base;
    const auto n = static_cast<std::size_t>(c.n_qubits);
    switch (spec.axis) {
    case SweepAxis::EpsilonUniform:
        c.pulse_imperfections.assign(n, value);
        for (std::size_t i = 1; i < n; i += 2)
            c.pulse_imperfections[i] += spec.epsilon_add;
        break;
    case SweepAxis::EpsilonAdd: {
        const double eps = c.pulse_imperfections.empty() ? 0.0 : c.pulse_imperfections[0];
        c.pulse_imperfections.assign(n, eps);
        for (std::size_t i = 1; i < n; i += 2) c.pulse_imperfections[i] += value;
        break;
    }
    case SweepAxis::Coupling:
        c.coupling = value;
        break;
    case SweepAxis::DeltaSite: {
        const int site = spec.delta_site == 0 ? c.n_qubits : spec.delta_site;
        if (site < 1 || site > c.n_qubits) {
            throw ParameterError("delta_site out of range");
        }
        c.detunings.at(static_cast<std::size_t>(site - 1)) = value;
        break;
    }
    }
    return c;
}

inline void validate(const SweepSpec &spec) {
    validate(spec.base);
    if (spec.values.empty()) throw ParameterError("sweep values are empty");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        if (!std::isfinite(spec.values[i])) {
            throw ParameterError("sweep value is not finite");
        }
        if (i > 0 && !(spec.values[i] > spec.values[i - 1])) {
            throw ParameterError("sweep values must be strictly increasing");
        }
    }
    if (spec.n_max < 0) throw ParameterError("n_max must be non-negative");
    if (!std::isfinite(spec.epsilon_add)) {
        throw ParameterError("epsilon_add is not finite");
    }
    if (spec.base.n_qubits > 1) spec.entropy_block.validate_proper_subset(spec.base.n_qubits);
}

/// Trace of a single sweep row; identical to what run_sweep stores.
inline StroboscopicTrace run_row(const SweepSpec &spec, double value) {
    const ChainConfig config = config_for_value(spec, value);
    const ComplexMatrix floquet = compose_floquet(config);
    TraceOptions options;
    options.entropy_block = spec.entropy_block;
    if (spec.record_overlaps) {
        options.overlap_basis = quasienergy_spectrum(floquet).eigenvectors;
    }
    return evolve(floquet, initial_ferromagnetic_state(config.n_qubits),
                  spec.n_max, options);
}

struct SweepMetadata {
    std::string timestamp;
    std::string version{kVersion};
    std::string config_hash;
};

struct SweepGrid {
    SweepSpec spec;
    /// Row-major [values.size() x (n_max + 1)].
    std::vector<std::vector<double>> polarization;
    std::vector<std::vector<double>> entropy;
    SweepMetadata metadata;

    [[nodiscard]] std::size_t rows() const { return polarization.size(); }
    [[nodiscard]] std::size_t cols() const {
        return polarization.empty() ? 0 : polarization.front().size();
    }
};

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Canonical one-line text form of a spec; input to config_hash.
inline std::string canonical_text(const SweepSpec &spec) {
    std::string s;
    auto add = [&s](std::string_view key, const std::string &v) {
        s.append(key).append("=").append(v).append(";");
    };
    auto list = [](const std::vector<double> &v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += format_double(v[i]);
        }
        return out;
    };
    add("n_qubits", std::to_string(spec.base.n_qubits));
    add("g", format_double(spec.base.coupling));
    add("delta", list(spec.base.detunings));
    add("epsilon", list(spec.base.pulse_imperfections));
    add("pulse_fraction", format_double(spec.base.pulse_fraction));
    add("mode", std::string(to_string(spec.base.mode)));
    add("axis", std::string(to_string(spec.axis)));
    add("values", list(spec.values));
    add("n_max", std::to_string(spec.n_max));
    std::string block;
    for (int site : spec.entropy_block.sites()) {
        if (!block.empty()) block += ',';
        block += std::to_string(site);
    }
    add("entropy_block", block);
    add("epsilon_add", format_double(spec.epsilon_add));
    add("delta_site", std::to_string(spec.delta_site));
    return s;
}

/// 64-bit FNV-1a as 16 hex digits.
inline std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    for (int i = 15; i >= 0; --i) {
        buf[i] = "0123456789abcdef"[h & 0xfu];
        h >>= 4;
    }
    buf[16] = '\0';
    return buf;
}

inline std::string config_hash(const SweepSpec &spec) {
    return fnv1a_hex(canonical_text(spec));
}

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/**
 * @brief Worker count: `requested` when positive, else FLOQUET_TM_THREADS
 * when set and positive, else all hardware threads.
 */
inline unsigned resolve_worker_count(int requested = 0) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char *env = std::getenv("FLOQUET_TM_THREADS")) {
        int v = 0;
        const std::string_view sv(env);
        const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec == std::errc{} && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * @brief Runs every row of the sweep. Row i is run_row(spec, values[i]).
 *
 * The first failing row (lowest index among those attempted) aborts the
 * sweep; its error is rethrown with the offending value in the message,
 * keeping the original exception category.
 */
inline SweepGrid run_sweep(const SweepSpec &spec, int workers = 0) {
    validate(spec);
    const std::size_t rows = spec.values.size();
    SweepGrid grid;
    grid.spec = spec;
    grid.polarization.resize(rows);
    grid.entropy.resize(rows);
    grid.metadata.timestamp = utc_timestamp();
    grid.metadata.config_hash = config_hash(spec);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex err_mutex;
    std::size_t err_row = rows;
    std::exception_ptr err;

    auto work = [&] {
        while (!abort.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows) return;
            try {
                StroboscopicTrace t = run_row(spec, spec.values[i]);
                grid.polarization[i] = std::move(t.polarization);
                grid.entropy[i] = std::move(t.entropy);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (i < err_row) {
                    err_row = i;
                    err = std::current_exception();
                }
                abort = true;
            }
        }
    };

    const unsigned n_workers =
        std::min<unsigned>(resolve_worker_count(workers), static_cast<unsigned>(rows));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work);
    }

    if (err) {
        const std::string where = "sweep failed at " +
                                  std::string(value_column(spec.axis)) + "=" +
                                  format_double(spec.values[err_row]) + ": ";
        try {
            std::rethrow_exception(err);
        } catch (const ParameterError &e) {
            throw ParameterError(where + e.what());
        } catch (const DomainError &e) {
            throw DomainError(where + e.what());
        } catch (const std::exception &e) {
            throw NumericalError(where + e.what());
        }
    }
    return grid;
}

} // namespace floquet_tm
