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
 * Deterministic CSV / JSON serialization of traces, grids, spectra, TM
 * intervals and run manifests.
 *
 * CSV: UTF-8, LF line endings, numbers in shortest round-trip form. Traces
 * and grids share the long layout `<value>,n,polarization,entropy`, one line
 * per (value, n). JSON documents carry "format": "floquet-tm/1".
 */
#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynamics.hpp"
#include "floquet_analysis.hpp"
#include "sweep.hpp"
#include "tm_detect.hpp"

namespace floquet_tm::io {

using nlohmann::json;

/// Format or content errors while reading serialized data.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw FormatError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

inline int parse_int(std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw FormatError("not an integer: '" + std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Polarization/entropy table as stored on disk: one row per swept value.
struct GridTable {
    std::string value_column = "epsilon";
    std::vector<double> values;
    std::vector<int> steps;
    std::vector<std::vector<double>> polarization;
    std::vector<std::vector<double>> entropy;

    bool operator==(const GridTable &) const = default;
};

inline GridTable to_table(const SweepGrid &grid) {
    GridTable t;
    t.value_column = std::string(value_column(grid.spec.axis));
    t.values = grid.spec.values;
    for (int n = 0; n <= grid.spec.n_max; ++n) t.steps.push_back(n);
    t.polarization = grid.polarization;
    t.entropy = grid.entropy;
    return t;
}

inline GridTable to_table(const StroboscopicTrace &trace, double value,
                          std::string_view column = "epsilon") {
    GridTable t;
    t.value_column = std::string(column);
    t.values = {value};
    t.steps = trace.steps;
    t.polarization = {trace.polarization};
    t.entropy = {trace.entropy};
    return t;
}

// ---------------------------------------------------------------- CSV

inline void write_table_csv(std::ostream &os, const GridTable &t) {
    os << t.value_column << ",n,polarization,entropy\n";
    for (std::size_t r = 0; r < t.values.size(); ++r) {
        const std::string v = format_double(t.values[r]);
        for (std::size_t c = 0; c < t.steps.size(); ++c) {
            os << v << ',' << t.steps[c] << ',' << format_double(t.polarization[r][c])
               << ',' << format_double(t.entropy[r][c]) << '\n';
        }
    }
}

inline void write_grid_csv(std::ostream &os, const SweepGrid &grid) {
    write_table_csv(os, to_table(grid));
}

/**
 * @brief Trace CSV. Optional trailing columns: sz_1..sz_N when per-site data
 * is present, then overlap_1..overlap_D holding |<v_j|Psi(nT)>|.
 */
inline void write_trace_csv(std::ostream &os, const StroboscopicTrace &trace,
                            double value, std::string_view column = "epsilon") {
    os << column << ",n,polarization,entropy";
    const std::size_t n_sites =
        trace.per_site_polarization.empty() ? 0 : trace.per_site_polarization.front().size();
    const std::size_t n_overlaps =
        trace.eigen_overlaps.empty() ? 0 : trace.eigen_overlaps.front().size();
    for (std::size_t i = 1; i <= n_sites; ++i) os << ",sz_" << i;
    for (std::size_t j = 1; j <= n_overlaps; ++j) os << ",overlap_" << j;
    os << '\n';
    const std::string v = format_double(value);
    for (std::size_t n = 0; n < trace.size(); ++n) {
        os << v << ',' << trace.steps[n] << ',' << format_double(trace.polarization[n])
           << ',' << format_double(trace.entropy[n]);
        for (std::size_t i = 0; i < n_sites; ++i)
            os << ',' << format_double(trace.per_site_polarization[n][i]);
        for (std::size_t j = 0; j < n_overlaps; ++j)
            os << ',' << format_double(std::abs(trace.eigen_overlaps[n][j]));
        os << '\n';
    }
}

/// Reads the long `<value>,n,polarization,entropy` layout; extra trailing
/// columns are ignored.
inline GridTable read_table_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("empty CSV input");
    const auto header = split(line);
    if (header.size() < 4 || header[1] != "n" || header[2] != "polarization" ||
        header[3] != "entropy") {
        throw FormatError("unexpected CSV header: " + line);
    }
    GridTable t;
    t.value_column = std::string(header[0]);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() < 4) throw FormatError("short CSV line: " + line);
        const double v = parse_double(cells[0]);
        const int n = parse_int(cells[1]);
        if (t.values.empty() || t.values.back() != v) {
            t.values.push_back(v);
            t.polarization.emplace_back();
            t.entropy.emplace_back();
        }
        if (t.values.size() == 1) t.steps.push_back(n);
        t.polarization.back().push_back(parse_double(cells[2]));
        t.entropy.back().push_back(parse_double(cells[3]));
    }
    for (const auto &row : t.polarization) {
        if (row.size() != t.steps.size()) throw FormatError("ragged CSV grid");
    }
    return t;
}

/// Single-row table as a trace (steps, polarization, entropy).
inline StroboscopicTrace trace_from_table(const GridTable &t, std::size_t row = 0) {
    if (row >= t.values.size()) throw FormatError("table has no row " + std::to_string(row));
    StroboscopicTrace trace;
    trace.steps = t.steps;
    trace.polarization = t.polarization[row];
    trace.entropy = t.entropy[row];
    return trace;
}

// ---------------------------------------------------------------- JSON

inline json table_to_json(const GridTable &t) {
    json j;
    j["format"] = std::string(kFormatVersion);
    j["kind"] = "grid";
    j["axis"] = {{"name", t.value_column}, {"values", t.values}};
    j["n"] = t.steps;
    j["polarization"] = t.polarization;
    j["entropy"] = t.entropy;
    return j;
}

inline json grid_to_json(const SweepGrid &grid) {
    json j = table_to_json(to_table(grid));
    j["metadata"] = {{"version", grid.metadata.version},
                     {"config_hash", grid.metadata.config_hash}};
    return j;
}

inline json trace_to_json(const StroboscopicTrace &trace, double value,
                          std::string_view column = "epsilon") {
    json j = table_to_json(to_table(trace, value, column));
    j["kind"] = "trace";
    if (!trace.per_site_polarization.empty()) {
        j["per_site_polarization"] = trace.per_site_polarization;
    }
    if (!trace.eigen_overlaps.empty()) {
        std::vector<std::vector<double>> mags;
        for (const auto &row : trace.eigen_overlaps) {
            auto &m = mags.emplace_back();
            for (const auto &c : row) m.push_back(std::abs(c));
        }
        j["overlap_magnitudes"] = mags;
    }
    return j;
}

inline void check_format(const json &j) {
    if (!j.contains("format") || j["format"] != kFormatVersion) {
        throw FormatError("missing or unsupported \"format\" tag");
    }
}

inline GridTable table_from_json(const json &j) {
    check_format(j);
    try {
        GridTable t;
        t.value_column = j.at("axis").at("name").get<std::string>();
        t.values = j.at("axis").at("values").get<std::vector<double>>();
        t.steps = j.at("n").get<std::vector<int>>();
        t.polarization = j.at("polarization").get<std::vector<std::vector<double>>>();
        t.entropy = j.at("entropy").get<std::vector<std::vector<double>>>();
        if (t.polarization.size() != t.values.size() || t.entropy.size() != t.values.size()) {
            throw FormatError("grid row count does not match axis values");
        }
        for (std::size_t r = 0; r < t.values.size(); ++r) {
            if (t.polarization[r].size() != t.steps.size() ||
                t.entropy[r].size() != t.steps.size()) {
                throw FormatError("grid row length does not match n");
            }
        }
        return t;
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed grid JSON: ") + e.what());
    }
}

/// Pretty-printed JSON with a trailing newline.
inline void write_json(std::ostream &os, const json &j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- spectra

/// Rows `j,eigenphase` and, when `analytic` is given, `analytic,deviation`
/// with analytic phases aligned to the numerical ones by align_phases.
inline void write_spectrum_csv(std::ostream &os, const QuasienergySpectrum &spec,
                               const QuasienergySpectrum *analytic = nullptr) {
    os << "j,eigenphase";
    if (analytic) os << ",analytic,deviation";
    os << '\n';
    std::vector<double> aligned;
    if (analytic) aligned = align_phases(spec.eigenphases, analytic->eigenphases);
    for (std::size_t j = 0; j < spec.eigenphases.size(); ++j) {
        os << j + 1 << ',' << format_double(spec.eigenphases[j]);
        if (analytic) {
            const double a = aligned[j];
            os << ',' << format_double(a) << ','
               << format_double(circular_distance(spec.eigenphases[j], a));
        }
        os << '\n';
    }
}

inline json spectrum_to_json(const QuasienergySpectrum &spec,
                             const QuasienergySpectrum *analytic = nullptr) {
    json j;
    j["format"] = std::string(kFormatVersion);
    j["kind"] = "spectrum";
    j["eigenphases"] = spec.eigenphases;
    if (analytic) {
        j["analytic"] = analytic->eigenphases;
        j["max_deviation"] = spectrum_distance(spec.eigenphases, analytic->eigenphases);
        j["analytic_outside_validity"] = analytic->outside_validity;
    }
    return j;
}

// ---------------------------------------------------------------- TM data

inline void write_intervals_csv(std::ostream &os, const std::vector<TmInterval> &intervals) {
    os << "n_start,n_end,duration,center,mean_abs_polarization,mean_entropy,k,l\n";
    for (const auto &iv : intervals) {
        os << iv.n_start << ',' << iv.n_end << ',' << iv.duration() << ','
           << format_double(iv.center()) << ',' << format_double(iv.mean_abs_polarization)
           << ',' << format_double(iv.mean_entropy) << ',';
        if (iv.label) os << iv.label->k << ',' << iv.label->l;
        else os << ',';
        os << '\n';
    }
}

inline json intervals_to_json(const std::vector<TmInterval> &intervals) {
    json arr = json::array();
    for (const auto &iv : intervals) {
        json e = {{"n_start", iv.n_start},
                  {"n_end", iv.n_end},
                  {"duration", iv.duration()},
                  {"center", iv.center()},
                  {"mean_abs_polarization", iv.mean_abs_polarization},
                  {"mean_entropy", iv.mean_entropy}};
        if (iv.label) e["label"] = {{"k", iv.label->k}, {"l", iv.label->l}};
        else e["label"] = nullptr;
        arr.push_back(std::move(e));
    }
    return {{"format", std::string(kFormatVersion)}, {"kind", "tm_intervals"}, {"intervals", arr}};
}

inline std::vector<TmInterval> read_intervals_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("n_start,n_end", 0) != 0) {
        throw FormatError("unexpected interval CSV header");
    }
    std::vector<TmInterval> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 8) throw FormatError("bad interval line: " + line);
        TmInterval iv;
        iv.n_start = parse_int(c[0]);
        iv.n_end = parse_int(c[1]);
        iv.mean_abs_polarization = parse_double(c[4]);
        iv.mean_entropy = parse_double(c[5]);
        if (!c[6].empty()) iv.label = TmLabel{parse_int(c[6]), parse_int(c[7])};
        out.push_back(iv);
    }
    return out;
}

inline void write_predictions_csv(std::ostream &os, double g,
                                  const std::vector<TmPrediction> &predictions) {
    os << "k,ell,g,epsilon,xi,omega1_t,omega2_t\n";
    for (const auto &p : predictions) {
        os << p.k << ',' << p.ell << ',' << format_double(g) << ','
           << format_double(p.epsilon) << ',' << format_double(p.xi_value) << ','
           << format_double(p.omega1_t) << ',' << format_double(p.omega2_t) << '\n';
    }
}

inline json predictions_to_json(double g, const std::vector<TmPrediction> &predictions) {
    json arr = json::array();
    for (const auto &p : predictions) {
        arr.push_back({{"k", p.k},
                       {"ell", p.ell},
                       {"epsilon", p.epsilon},
                       {"xi", p.xi_value},
                       {"omega1_t", p.omega1_t},
                       {"omega2_t", p.omega2_t}});
    }
    return {{"format", std::string(kFormatVersion)},
            {"kind", "tm_predictions"},
            {"g", g},
            {"predictions", arr}};
}

// ---------------------------------------------------------------- manifest

/// Written next to every output file; replaying it reproduces the outputs.
struct RunManifest {
    std::string subcommand;
    json parameters = json::object();
    std::vector<std::string> outputs;
    std::string format{kFormatVersion};
    std::string version{kVersion};
    std::string created;
};

inline json manifest_to_json(const RunManifest &m) {
    return {{"format", m.format},     {"version", m.version},
            {"subcommand", m.subcommand}, {"parameters", m.parameters},
            {"outputs", m.outputs},   {"created", m.created}};
}

inline RunManifest manifest_from_json(const json &j) {
    check_format(j);
    try {
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.parameters = j.at("parameters");
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.version = j.value("version", std::string(kVersion));
        m.created = j.value("created", std::string{});
        return m;
    } catch (const json::exception &e) {
        throw FormatError(std::string("malformed manifest: ") + e.what());
    }
}

} // namespace floquet_tm::io
