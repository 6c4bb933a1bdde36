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

// floquet-tm: command-line driver for the Floquet time-molecule simulator.
//
// Exit codes: 0 success, 1 numerical failure or unwritable output,
// 2 usage / parameter errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "floquet_tm/floquet_tm.hpp"

namespace fs = std::filesystem;
using namespace floquet_tm;
using nlohmann::json;

namespace {

class OutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunParameters {
    // chain
    int n_qubits = 2;
    double g = 0.0;
    std::string epsilon = "0";
    std::string delta = "0";
    std::string mode = "instantaneous";
    double pulse_fraction = 0.0;
    // evolution
    int steps = 150;
    std::string entropy_block = "first";
    bool overlaps = false;
    bool per_site = false;
    // output
    std::string out;
    std::string format = "csv";
    // sweep
    std::string axis = "epsilon_uniform";
    double min = 0.0;
    double max = 0.2;
    int points = 400;
    double epsilon_add = 0.0;
    int delta_site = 0;
    int threads = 0;
    // predict-tm
    int k = 1;
    int ell = 0; // 0: enumerate
    double eps_max = 0.2;
    // detect-tm
    std::string input;
    int window = 10;
    double threshold = 0.0;     // 0: 0.075 N
    double entropy_floor = -1.0; // < 0: default
    int k_max = 2;
};

json to_json(const RunParameters &p) {
    return {{"n_qubits", p.n_qubits},
            {"g", p.g},
            {"epsilon", p.epsilon},
            {"delta", p.delta},
            {"mode", p.mode},
            {"pulse_fraction", p.pulse_fraction},
            {"steps", p.steps},
            {"entropy_block", p.entropy_block},
            {"overlaps", p.overlaps},
            {"per_site", p.per_site},
            {"out", p.out},
            {"format", p.format},
            {"axis", p.axis},
            {"min", p.min},
            {"max", p.max},
            {"points", p.points},
            {"epsilon_add", p.epsilon_add},
            {"delta_site", p.delta_site},
            {"threads", p.threads},
            {"k", p.k},
            {"ell", p.ell},
            {"eps_max", p.eps_max},
            {"input", p.input},
            {"window", p.window},
            {"threshold", p.threshold},
            {"entropy_floor", p.entropy_floor},
            {"k_max", p.k_max}};
}

RunParameters from_json(const json &j) {
    RunParameters p;
    auto get = [&j](const char *key, auto &field) {
        if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    get("n_qubits", p.n_qubits);
    get("g", p.g);
    get("epsilon", p.epsilon);
    get("delta", p.delta);
    get("mode", p.mode);
    get("pulse_fraction", p.pulse_fraction);
    get("steps", p.steps);
    get("entropy_block", p.entropy_block);
    get("overlaps", p.overlaps);
    get("per_site", p.per_site);
    get("out", p.out);
    get("format", p.format);
    get("axis", p.axis);
    get("min", p.min);
    get("max", p.max);
    get("points", p.points);
    get("epsilon_add", p.epsilon_add);
    get("delta_site", p.delta_site);
    get("threads", p.threads);
    get("k", p.k);
    get("ell", p.ell);
    get("eps_max", p.eps_max);
    get("input", p.input);
    get("window", p.window);
    get("threshold", p.threshold);
    get("entropy_floor", p.entropy_floor);
    get("k_max", p.k_max);
    return p;
}

/// Scalar broadcasts to every qubit; otherwise one value per qubit.
std::vector<double> per_qubit_list(const std::string &text, int n_qubits, const char *flag) {
    std::vector<double> values;
    try {
        for (auto cell : io::split(text)) values.push_back(io::parse_double(cell));
    } catch (const io::FormatError &) {
        throw ParameterError(std::string("--") + flag + ": cannot parse '" + text + "'");
    }
    if (values.size() == 1) return std::vector<double>(static_cast<std::size_t>(std::max(n_qubits, 0)), values[0]);
    if (static_cast<int>(values.size()) != n_qubits) {
        throw ParameterError(std::string("--") + flag + " needs 1 or " + std::to_string(n_qubits) +
                             " values, got " + std::to_string(values.size()));
    }
    return values;
}

ChainConfig chain_config(const RunParameters &p) {
    ChainConfig c;
    c.n_qubits = p.n_qubits;
    c.coupling = p.g;
    c.pulse_imperfections = per_qubit_list(p.epsilon, p.n_qubits, "epsilon");
    c.detunings = per_qubit_list(p.delta, p.n_qubits, "delta");
    if (p.mode == "instantaneous") {
        c.mode = PulseMode::Instantaneous;
    } else if (p.mode == "finite") {
        c.mode = PulseMode::FinitePulse;
        c.pulse_fraction = p.pulse_fraction;
    } else {
        throw ParameterError("--mode must be instantaneous or finite");
    }
    if (!(p.pulse_fraction >= 0.0 && p.pulse_fraction < 1.0)) {
        throw ParameterError("--pulse-fraction must lie in [0, 1)");
    }
    validate(c);
    return c;
}

SiteSet entropy_block(const RunParameters &p) {
    if (p.entropy_block == "first") return SiteSet::first();
    if (p.entropy_block == "half") return SiteSet::half_chain(p.n_qubits);
    throw ParameterError("--entropy-block must be first or half");
}

/// Where output goes; `path` empty means standard output.
struct OutputTarget {
    fs::path path;
    [[nodiscard]] bool to_stdout() const { return path.empty(); }
};

OutputTarget resolve_output(const std::string &subcommand, const RunParameters &p,
                            const std::string &basename) {
    if (p.out == "-") return {};
    if (!p.out.empty()) return {fs::path(p.out)};
    RunParameters keyed = p;
    keyed.out.clear();
    const std::string run = subcommand + "-" + fnv1a_hex(to_json(keyed).dump()).substr(0, 8);
    return {fs::path("out") / run / (basename + "." + p.format)};
}

template <class Writer>
void emit(const std::string &subcommand, const RunParameters &p, const OutputTarget &target,
          Writer &&write) {
    if (target.to_stdout()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    if (target.path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.path.parent_path(), ec);
        if (ec) throw OutputError("cannot create " + target.path.parent_path().string());
    }
    {
        std::ofstream os(target.path, std::ios::binary);
        if (!os) throw OutputError("cannot open " + target.path.string() + " for writing");
        write(os);
        if (!os) throw OutputError("failed writing " + target.path.string());
    }
    io::RunManifest manifest;
    manifest.subcommand = subcommand;
    RunParameters resolved = p;
    resolved.out = target.path.string();
    manifest.parameters = to_json(resolved);
    manifest.outputs = {target.path.string()};
    manifest.created = utc_timestamp();
    const fs::path manifest_path = target.path.string() + ".manifest.json";
    std::ofstream ms(manifest_path, std::ios::binary);
    if (!ms) throw OutputError("cannot open " + manifest_path.string() + " for writing");
    io::write_json(ms, io::manifest_to_json(manifest));
}

void check_format(const RunParameters &p) {
    if (p.format != "csv" && p.format != "json") {
        throw ParameterError("--format must be csv or json");
    }
}

int run_evolve(const RunParameters &p) {
    check_format(p);
    const ChainConfig config = chain_config(p);
    if (p.steps < 0) throw ParameterError("--steps must be non-negative");
    const ComplexMatrix floquet = compose_floquet(config);
    TraceOptions options;
    options.entropy_block = entropy_block(p);
    options.per_site = p.per_site;
    if (p.overlaps) options.overlap_basis = quasienergy_spectrum(floquet).eigenvectors;
    const StroboscopicTrace trace =
        evolve(floquet, initial_ferromagnetic_state(config.n_qubits), p.steps, options);
    const double eps = config.pulse_imperfections.front();
    emit("evolve", p, resolve_output("evolve", p, "trace"), [&](std::ostream &os) {
        if (p.format == "csv") io::write_trace_csv(os, trace, eps);
        else io::write_json(os, io::trace_to_json(trace, eps));
    });
    return 0;
}

int run_sweep_cmd(const RunParameters &p) {
    check_format(p);
    SweepSpec spec;
    spec.base = chain_config(p);
    spec.axis = parse_sweep_axis(p.axis);
    if (p.points < 1) throw ParameterError("--points must be >= 1");
    if (p.points > 1 && !(p.max > p.min)) throw ParameterError("--max must exceed --min");
    spec.values = linspace(p.min, p.max, p.points);
    spec.n_max = p.steps;
    spec.entropy_block = entropy_block(p);
    spec.epsilon_add = p.epsilon_add;
    spec.delta_site = p.delta_site;
    const SweepGrid grid = run_sweep(spec, p.threads);
    emit("sweep", p, resolve_output("sweep", p, "grid"), [&](std::ostream &os) {
        if (p.format == "csv") io::write_grid_csv(os, grid);
        else io::write_json(os, io::grid_to_json(grid));
    });
    return 0;
}

int run_spectrum(const RunParameters &p) {
    check_format(p);
    const ChainConfig config = chain_config(p);
    const QuasienergySpectrum spec = quasienergy_spectrum(compose_floquet(config));
    std::optional<QuasienergySpectrum> analytic;
    const bool no_detuning =
        std::all_of(config.detunings.begin(), config.detunings.end(), [](double d) { return d == 0.0; });
    const bool instantaneous =
        config.mode == PulseMode::Instantaneous || config.pulse_fraction == 0.0;
    if (config.n_qubits == 2 && config.identical_qubits() && no_detuning && instantaneous) {
        analytic = analytic_two_qubit_spectrum(config.pulse_imperfections.front(), config.coupling);
        if (analytic->outside_validity) {
            std::cerr << "floquet-tm: warning: closed-form spectrum assumes eps, g << 1\n";
        }
    }
    const QuasienergySpectrum *a = analytic ? &*analytic : nullptr;
    emit("spectrum", p, resolve_output("spectrum", p, "spectrum"), [&](std::ostream &os) {
        if (p.format == "csv") io::write_spectrum_csv(os, spec, a);
        else io::write_json(os, io::spectrum_to_json(spec, a));
    });
    return 0;
}

int run_predict(const RunParameters &p) {
    check_format(p);
    std::vector<TmPrediction> predictions;
    if (p.ell != 0) {
        predictions.push_back(tm_epsilon_for(p.k, p.ell, p.g));
    } else {
        for (int ell = 2 * (p.k + 1);; ell += 2) {
            const TmPrediction pr = tm_epsilon_for(p.k, ell, p.g);
            if (pr.epsilon > p.eps_max) break;
            predictions.push_back(pr);
        }
    }
    emit("predict-tm", p, resolve_output("predict-tm", p, "predictions"), [&](std::ostream &os) {
        if (p.format == "csv") io::write_predictions_csv(os, p.g, predictions);
        else io::write_json(os, io::predictions_to_json(p.g, predictions));
    });
    return 0;
}

StroboscopicTrace load_trace(const std::string &path, double &value, std::string &column) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot read " + path);
    std::stringstream buffer;
    buffer << is.rdbuf();
    const std::string text = buffer.str();
    io::GridTable table;
    try {
        if (!text.empty() && text.front() == '{') {
            table = io::table_from_json(json::parse(text));
        } else {
            std::istringstream ts(text);
            table = io::read_table_csv(ts);
        }
    } catch (const json::exception &e) {
        throw ParameterError(path + ": " + e.what());
    } catch (const io::FormatError &e) {
        throw ParameterError(path + ": " + e.what());
    }
    if (table.values.size() != 1) throw ParameterError(path + ": expected a single trace");
    value = table.values.front();
    column = table.value_column;
    return io::trace_from_table(table);
}

int run_detect(const RunParameters &p) {
    check_format(p);
    StroboscopicTrace trace;
    double epsilon = 0.0;
    if (!p.input.empty()) {
        std::string column;
        trace = load_trace(p.input, epsilon, column);
        if (column != "epsilon") epsilon = per_qubit_list(p.epsilon, p.n_qubits, "epsilon").front();
    } else {
        const ChainConfig config = chain_config(p);
        if (p.steps < 0) throw ParameterError("--steps must be non-negative");
        TraceOptions options;
        options.entropy_block = entropy_block(p);
        trace = evolve(compose_floquet(config), initial_ferromagnetic_state(config.n_qubits),
                       p.steps, options);
        epsilon = config.pulse_imperfections.front();
    }
    DetectionParams params = DetectionParams::defaults_for(p.n_qubits, trace.has_entropy());
    params.window = p.window;
    if (p.threshold > 0.0) params.threshold = p.threshold;
    if (p.entropy_floor >= 0.0) params.entropy_floor = p.entropy_floor;
    auto intervals = detect_flat_regions(trace, params);
    if (p.g > 0.0) intervals = label_intervals(std::move(intervals), p.g, epsilon, p.k_max);
    emit("detect-tm", p, resolve_output("detect-tm", p, "intervals"), [&](std::ostream &os) {
        if (p.format == "csv") io::write_intervals_csv(os, intervals);
        else io::write_json(os, io::intervals_to_json(intervals));
    });
    return 0;
}

int dispatch(const std::string &subcommand, const RunParameters &p) {
    if (subcommand == "evolve") return run_evolve(p);
    if (subcommand == "sweep") return run_sweep_cmd(p);
    if (subcommand == "spectrum") return run_spectrum(p);
    if (subcommand == "predict-tm") return run_predict(p);
    if (subcommand == "detect-tm") return run_detect(p);
    throw ParameterError("unknown subcommand '" + subcommand + "'");
}

int run_replay(const std::string &manifest_path, const std::string &out_override) {
    std::ifstream is(manifest_path, std::ios::binary);
    if (!is) throw ParameterError("cannot read " + manifest_path);
    io::RunManifest manifest;
    try {
        manifest = io::manifest_from_json(json::parse(is));
    } catch (const json::exception &e) {
        throw ParameterError(manifest_path + ": " + e.what());
    } catch (const io::FormatError &e) {
        throw ParameterError(manifest_path + ": " + e.what());
    }
    RunParameters p;
    try {
        p = from_json(manifest.parameters);
    } catch (const json::exception &e) {
        throw ParameterError(manifest_path + ": bad parameters: " + e.what());
    }
    if (!out_override.empty()) p.out = out_override;
    return dispatch(manifest.subcommand, p);
}

void add_chain_options(CLI::App *sub, RunParameters &p) {
    sub->add_option("--n-qubits", p.n_qubits, "Number of qubits N")->capture_default_str();
    sub->add_option("--g", p.g, "XY coupling phase per period")->capture_default_str();
    sub->add_option("--epsilon", p.epsilon, "Pulse imperfection: scalar or per-qubit comma list")
        ->capture_default_str();
    sub->add_option("--delta", p.delta, "Detunings: scalar or per-qubit comma list")
        ->capture_default_str();
    sub->add_option("--mode", p.mode, "instantaneous|finite")->capture_default_str();
    sub->add_option("--pulse-fraction", p.pulse_fraction, "t1/T for finite mode")
        ->capture_default_str();
}

void add_output_options(CLI::App *sub, RunParameters &p) {
    sub->add_option("--out", p.out, "Output file, '-' for standard output");
    sub->add_option("--format", p.format, "csv|json")->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Floquet dynamics of pi-pulse driven qubit chains and time-molecule analysis",
                 "floquet-tm"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    RunParameters p;
    std::string manifest_path;
    std::string replay_out;

    auto *evolve_cmd = app.add_subcommand("evolve", "Stroboscopic trace from |uu...u>");
    add_chain_options(evolve_cmd, p);
    evolve_cmd->add_option("--steps", p.steps, "Number of periods")->capture_default_str();
    evolve_cmd->add_option("--entropy-block", p.entropy_block, "first|half")->capture_default_str();
    evolve_cmd->add_flag("--overlaps", p.overlaps, "Record |<v_j|Psi>| in the Floquet eigenbasis");
    evolve_cmd->add_flag("--per-site", p.per_site, "Record per-site <sigma_z>");
    add_output_options(evolve_cmd, p);

    auto *sweep_cmd = app.add_subcommand("sweep", "Polarization/entropy grid over one parameter");
    add_chain_options(sweep_cmd, p);
    sweep_cmd->add_option("--steps", p.steps, "Number of periods")->capture_default_str();
    sweep_cmd->add_option("--entropy-block", p.entropy_block, "first|half")->capture_default_str();
    sweep_cmd->add_option("--axis", p.axis, "epsilon_uniform|epsilon_add|g|delta_site")
        ->capture_default_str();
    sweep_cmd->add_option("--min", p.min, "First swept value")->capture_default_str();
    sweep_cmd->add_option("--max", p.max, "Last swept value")->capture_default_str();
    sweep_cmd->add_option("--points", p.points, "Number of swept values")->capture_default_str();
    sweep_cmd->add_option("--epsilon-add", p.epsilon_add,
                          "Extra pulse imperfection on even sites (epsilon_uniform axis)")
        ->capture_default_str();
    sweep_cmd->add_option("--delta-site", p.delta_site, "Site for the delta_site axis (0 = last)")
        ->capture_default_str();
    sweep_cmd->add_option("--threads", p.threads, "Workers (0 = FLOQUET_TM_THREADS or all cores)")
        ->capture_default_str();
    add_output_options(sweep_cmd, p);

    auto *spectrum_cmd = app.add_subcommand("spectrum", "Quasienergy spectrum of the Floquet operator");
    add_chain_options(spectrum_cmd, p);
    add_output_options(spectrum_cmd, p);

    auto *predict_cmd = app.add_subcommand("predict-tm", "Pulse imperfection where xi_k is even");
    predict_cmd->add_option("--g", p.g, "XY coupling phase per period")->required();
    predict_cmd->add_option("--k", p.k, "Commensurability parameter")->capture_default_str();
    predict_cmd->add_option("--ell", p.ell, "Even integer target (omit to enumerate)");
    predict_cmd->add_option("--eps-max", p.eps_max, "Enumeration bound on epsilon")
        ->capture_default_str();
    add_output_options(predict_cmd, p);

    auto *detect_cmd = app.add_subcommand("detect-tm", "Detect time-molecule flat regions");
    add_chain_options(detect_cmd, p);
    detect_cmd->add_option("--steps", p.steps, "Number of periods")->capture_default_str();
    detect_cmd->add_option("--entropy-block", p.entropy_block, "first|half")->capture_default_str();
    detect_cmd->add_option("--input", p.input, "Trace file (CSV or JSON) instead of simulating");
    detect_cmd->add_option("--window", p.window, "Minimum run length")->capture_default_str();
    detect_cmd->add_option("--threshold", p.threshold, "|<sigma_z>| bound (default 0.075 N)");
    detect_cmd->add_option("--entropy-floor", p.entropy_floor, "Mean entropy floor (default 0.6)");
    detect_cmd->add_option("--k-max", p.k_max, "Largest k for labelling")->capture_default_str();
    add_output_options(detect_cmd, p);

    auto *replay_cmd = app.add_subcommand("replay", "Re-run a manifest written next to an output");
    replay_cmd->add_option("manifest", manifest_path, "Manifest JSON")->required();
    replay_cmd->add_option("--out", replay_out, "Override the recorded output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "floquet-tm: error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (replay_cmd->parsed()) return run_replay(manifest_path, replay_out);
        return dispatch(app.get_subcommands().front()->get_name(), p);
    } catch (const ParameterError &e) {
        std::cerr << "floquet-tm: error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError &e) {
        std::cerr << "floquet-tm: error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError &e) {
        std::cerr << "floquet-tm: numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const OutputError &e) {
        std::cerr << "floquet-tm: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "floquet-tm: error: " << e.what() << '\n';
        return 1;
    }
}
