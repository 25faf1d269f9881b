#include "zeno/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "io_detail.hpp"

namespace zeno::io {

namespace {

using nlohmann::ordered_json;
using namespace detail;

// Applies one key = value pair; returns false for unknown keys.
bool apply_key(RunSpec& spec, const std::string& key, std::string_view value,
               bool& saw_beta, bool& saw_zero_true) {
    const std::string_view v = trim(value);
    if (key == "command") {
        spec.command = parse_command(v);
    } else if (key == "model") {
        spec.model = parse_model(v);
    } else if (key == "G") {
        spec.strong_coupling = parse_double(v, key);
    } else if (key == "F") {
        spec.weak_coupling = parse_double(v, key);
    } else if (key == "s") {
        spec.strong_ohmicity = parse_double(v, key);
    } else if (key == "r") {
        spec.weak_ohmicity = parse_double(v, key);
    } else if (key == "wc") {
        spec.strong_cutoff = parse_double(v, key);
    } else if (key == "ac") {
        spec.weak_cutoff = parse_double(v, key);
    } else if (key == "eps") {
        spec.epsilon = parse_double(v, key);
    } else if (key == "delta") {
        spec.delta = parse_double(v, key);
    } else if (key == "j") {
        spec.spin_j = parse_double(v, key);
    } else if (key == "beta") {
        spec.beta = parse_double(v, key);
        saw_beta = true;
    } else if (key == "zero_temp") {
        if (parse_bool(v, key)) {
            spec.beta.reset();
            saw_zero_true = true;
        } else if (!spec.beta.has_value()) {
            throw ConfigError("zero_temp = false requires beta");
        }
    } else if (key == "tau_min") {
        spec.tau_min = parse_double(v, key);
    } else if (key == "tau_max") {
        spec.tau_max = parse_double(v, key);
    } else if (key == "tau_steps") {
        spec.tau_steps = parse_int(v, key);
    } else if (key == "tau_spacing") {
        spec.tau_spacing = parse_spacing(v);
    } else if (key == "sweep_param") {
        std::string name(v);
        check_sweep_name(name);
        spec.sweep_parameter = std::move(name);
    } else if (key == "sweep_values") {
        spec.sweep_values = parse_value_list(v, key);
    } else if (key == "format") {
        spec.format = parse_format(v);
    } else if (key == "out") {
        spec.out = std::string(v);
    } else if (key == "paper_literal") {
        spec.paper_literal = parse_bool(v, key);
    } else if (key == "abs_tol") {
        spec.abs_tol = parse_double(v, key);
    } else if (key == "rel_tol") {
        spec.rel_tol = parse_double(v, key);
    } else {
        return false;
    }
    return true;
}

std::string snapshot_header(const RunSpec& spec) {
    std::istringstream lines(spec.to_config_text());
    std::string out;
    std::string line;
    while (std::getline(lines, line)) {
        out += "# " + line + "\n";
    }
    return out;
}

ordered_json params_json(const RunSpec& spec) {
    ordered_json p;
    p["command"] = command_name(spec.command);
    p["model"] = model_name(spec.model);
    p["G"] = spec.strong_coupling;
    p["F"] = spec.weak_coupling;
    p["s"] = spec.strong_ohmicity;
    p["r"] = spec.weak_ohmicity;
    p["wc"] = spec.strong_cutoff;
    p["ac"] = spec.weak_cutoff;
    p["eps"] = spec.epsilon;
    p["delta"] = spec.delta;
    if (spec.spin_j.has_value()) p["j"] = *spec.spin_j;
    if (spec.beta.has_value()) {
        p["beta"] = *spec.beta;
    } else {
        p["zero_temp"] = true;
    }
    p["tau_min"] = spec.tau_min;
    p["tau_max"] = spec.tau_max;
    p["tau_steps"] = spec.tau_steps;
    p["tau_spacing"] = spacing_name(spec.tau_spacing);
    if (spec.sweep_parameter.has_value()) p["sweep_param"] = *spec.sweep_parameter;
    if (!spec.sweep_values.empty()) p["sweep_values"] = spec.sweep_values;
    p["format"] = format_name(spec.format);
    p["out"] = spec.out;
    p["paper_literal"] = spec.paper_literal;
    p["abs_tol"] = spec.abs_tol;
    p["rel_tol"] = spec.rel_tol;
    return p;
}

const char* kind_name(analysis::ExtremumKind k) {
    return k == analysis::ExtremumKind::Maximum ? "maximum" : "minimum";
}

int env_threads(std::ostream& diagnostics) {
    const char* raw = std::getenv("ZENO_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    int n = 0;
    auto res = std::from_chars(raw, raw + std::string_view(raw).size(), n);
    if (res.ec != std::errc{} || *res.ptr != '\0' || n < 1) {
        diagnostics << "warning: ignoring invalid ZENO_THREADS value '" << raw
                    << "'\n";
        return 0;
    }
    return n;
}

void write_output(const std::string& payload, const std::string& dest) {
    if (dest == "-") {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream file(dest, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + dest + "'");
    }
    file << payload;
    file.flush();
    if (!file) {
        throw std::runtime_error("failed writing output file '" + dest + "'");
    }
}

} // namespace

void RunSpec::validate() const {
    if (model == Model::CollectiveSpin && !spin_j.has_value()) {
        throw ConfigError("model lsb requires j");
    }
    if (model == Model::TwoLevel && spin_j.has_value()) {
        throw ConfigError("j is only meaningful with model lsb");
    }
    if (!(tau_min > 0.0) || !(tau_max > tau_min) || !std::isfinite(tau_max)) {
        throw ConfigError("need 0 < tau_min < tau_max");
    }
    const int min_steps = command == Command::Transitions ? 3 : 2;
    if (tau_steps < min_steps) {
        throw ConfigError("tau_steps must be at least " +
                          std::to_string(min_steps) + " for this command");
    }
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw ConfigError("abs_tol and rel_tol must be positive");
    }
    if (command == Command::Sweep) {
        if (!sweep_parameter.has_value()) {
            throw ConfigError("sweep requires --sweep-param");
        }
        if (sweep_values.empty()) {
            throw ConfigError("sweep requires --sweep-values");
        }
    }
    if (sweep_parameter.has_value()) {
        check_sweep_name(*sweep_parameter);
        if (*sweep_parameter == "j" && model == Model::TwoLevel) {
            throw ConfigError("sweeping j requires model lsb");
        }
    }
}

decay::ModelConfig RunSpec::to_model_config() const {
    try {
        bath::SpectralParams strong(strong_coupling, strong_ohmicity, strong_cutoff);
        bath::SpectralParams weak(weak_coupling, weak_ohmicity, weak_cutoff);
        bath::Temperature temperature = beta.has_value()
                                            ? bath::Temperature::inverse_beta(*beta)
                                            : bath::Temperature::zero();
        std::optional<double> j =
            model == Model::CollectiveSpin ? spin_j : std::nullopt;
        return decay::ModelConfig(epsilon, delta, {strong, weak}, temperature, j);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

quad::QuadratureSpec RunSpec::to_quadrature_spec() const {
    quad::QuadratureSpec q;
    q.abs_tol = abs_tol;
    q.rel_tol = rel_tol;
    return q;
}

analysis::SweepParameter RunSpec::sweep_parameter_enum() const {
    if (!sweep_parameter.has_value()) {
        throw ConfigError("no sweep parameter configured");
    }
    const std::string& name = *sweep_parameter;
    if (name == "G") return analysis::SweepParameter::StrongCoupling;
    if (name == "F") return analysis::SweepParameter::WeakCoupling;
    if (name == "j") return analysis::SweepParameter::SpinJ;
    if (name == "delta") return analysis::SweepParameter::Delta;
    if (name == "eps") return analysis::SweepParameter::Epsilon;
    throw ConfigError("unknown sweep parameter '" + name + "'");
}

std::string RunSpec::to_config_text() const {
    std::string text;
    auto kv = [&text](const char* key, const std::string& value) {
        text += key;
        text += " = ";
        text += value;
        text += "\n";
    };
    kv("command", command_name(command));
    kv("model", model_name(model));
    kv("G", fmt_short(strong_coupling));
    kv("F", fmt_short(weak_coupling));
    kv("s", fmt_short(strong_ohmicity));
    kv("r", fmt_short(weak_ohmicity));
    kv("wc", fmt_short(strong_cutoff));
    kv("ac", fmt_short(weak_cutoff));
    kv("eps", fmt_short(epsilon));
    kv("delta", fmt_short(delta));
    if (spin_j.has_value()) kv("j", fmt_short(*spin_j));
    if (beta.has_value()) {
        kv("beta", fmt_short(*beta));
    } else {
        kv("zero_temp", "true");
    }
    kv("tau_min", fmt_short(tau_min));
    kv("tau_max", fmt_short(tau_max));
    kv("tau_steps", std::to_string(tau_steps));
    kv("tau_spacing", spacing_name(tau_spacing));
    if (sweep_parameter.has_value()) kv("sweep_param", *sweep_parameter);
    if (!sweep_values.empty()) kv("sweep_values", join_values(sweep_values));
    kv("format", format_name(format));
    kv("out", out);
    kv("paper_literal", paper_literal ? "true" : "false");
    kv("abs_tol", fmt_short(abs_tol));
    kv("rel_tol", fmt_short(rel_tol));
    return text;
}

RunSpec parse_config_text(std::string_view text, const RunSpec& base) {
    RunSpec spec = base;
    bool saw_beta = false;
    bool saw_zero_true = false;

    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        line = trim(line);
        while (!line.empty() && line.front() == '#') {
            line.remove_prefix(1);
            line = trim(line);
        }
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) continue; // annotation, not a setting

        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = line.substr(eq + 1);
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": missing key before '='");
        }
        if (!apply_key(spec, key, value, saw_beta, saw_zero_true)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (saw_beta && saw_zero_true) {
        throw ConfigError("beta conflicts with zero_temp = true");
    }
    return spec;
}

std::string to_csv(const analysis::DecayCurve& curve, const RunSpec& spec) {
    std::string out = snapshot_header(spec);
    if (curve.truncated_at.has_value()) {
        out += "# truncated before tau " + fmt_short(*curve.truncated_at) +
               " (survival expansion left (0,1])\n";
    }
    const bool with_survival = curve.survival.has_value();
    out += with_survival ? "tau,gamma,survival\n" : "tau,gamma\n";
    for (std::size_t i = 0; i < curve.tau.size(); ++i) {
        out += fmt_data(curve.tau[i]);
        out += ",";
        out += fmt_data(curve.gamma[i]);
        if (with_survival) {
            out += ",";
            out += fmt_data((*curve.survival)[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_csv(const analysis::SweepResult& sweep, const RunSpec& spec) {
    std::string out = snapshot_header(spec);
    out += "tau";
    for (double v : sweep.values) {
        out += ",gamma_" + fmt_short(v);
    }
    out += "\n";
    const std::vector<double>& tau = sweep.curves.front().tau;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        out += fmt_data(tau[i]);
        for (const analysis::DecayCurve& c : sweep.curves) {
            out += ",";
            out += fmt_data(c.gamma[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_csv(const analysis::TransitionReport& report, const RunSpec& spec) {
    std::string out = snapshot_header(spec);
    out += report.refinement == analysis::Refinement::Parabolic
               ? "# refinement: parabolic\n"
               : "# refinement: grid-only\n";
    for (const auto& [start, length] : report.flat_runs) {
        out += "# flat run: " + std::to_string(length) +
               " equal values from index " + std::to_string(start) + "\n";
    }
    out += "tau_star,kind,gamma\n";
    for (const analysis::Extremum& e : report.extrema) {
        out += fmt_data(e.tau_star);
        out += ",";
        out += kind_name(e.kind);
        out += ",";
        out += fmt_data(e.gamma_at);
        out += "\n";
    }
    return out;
}

std::string to_json(const analysis::DecayCurve& curve, const RunSpec& spec) {
    ordered_json j;
    j["params"] = params_json(spec);
    j["tau"] = curve.tau;
    j["gamma"] = curve.gamma;
    if (curve.survival.has_value()) j["survival"] = *curve.survival;
    if (curve.truncated_at.has_value()) j["truncated_at"] = *curve.truncated_at;
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::SweepResult& sweep, const RunSpec& spec) {
    ordered_json j;
    j["params"] = params_json(spec);
    j["parameter"] = sweep.parameter;
    j["values"] = sweep.values;
    j["tau"] = sweep.curves.front().tau;
    ordered_json curves = ordered_json::array();
    for (std::size_t i = 0; i < sweep.curves.size(); ++i) {
        ordered_json c;
        c["value"] = sweep.values[i];
        c["gamma"] = sweep.curves[i].gamma;
        curves.push_back(std::move(c));
    }
    j["curves"] = std::move(curves);
    return j.dump(2) + "\n";
}

std::string to_json(const analysis::TransitionReport& report, const RunSpec& spec) {
    ordered_json j;
    j["params"] = params_json(spec);
    j["refinement"] = report.refinement == analysis::Refinement::Parabolic
                          ? "parabolic"
                          : "grid-only";
    ordered_json extrema = ordered_json::array();
    for (const analysis::Extremum& e : report.extrema) {
        ordered_json x;
        x["tau_star"] = e.tau_star;
        x["kind"] = kind_name(e.kind);
        x["gamma"] = e.gamma_at;
        extrema.push_back(std::move(x));
    }
    j["extrema"] = std::move(extrema);
    ordered_json flats = ordered_json::array();
    for (const auto& [start, length] : report.flat_runs) {
        flats.push_back(ordered_json::array({start, length}));
    }
    j["flat_runs"] = std::move(flats);
    return j.dump(2) + "\n";
}

void run(const RunSpec& spec, std::ostream& diagnostics) {
    spec.validate();
    const quad::QuadratureSpec q = spec.to_quadrature_spec();
    const decay::ModelConfig cfg = spec.to_model_config();
    const std::vector<double> grid = analysis::make_tau_grid(
        spec.tau_min, spec.tau_max, spec.tau_steps, spec.tau_spacing);

    analysis::CurveOptions options;
    options.paper_literal = spec.paper_literal;
    options.threads = env_threads(diagnostics);

    std::string payload;
    switch (spec.command) {
        case Command::Curve: {
            options.with_survival = true;
            const analysis::DecayCurve curve =
                analysis::compute_curve(cfg, grid, q, options);
            if (curve.truncated_at.has_value()) {
                diagnostics << "warning: curve truncated before tau = "
                            << fmt_short(*curve.truncated_at)
                            << " (survival expansion left (0,1])\n";
            }
            payload = spec.format == OutputFormat::Csv ? to_csv(curve, spec)
                                                       : to_json(curve, spec);
            break;
        }
        case Command::Sweep: {
            analysis::SweepResult result;
            try {
                result = analysis::sweep(cfg, spec.sweep_parameter_enum(),
                                         spec.sweep_values, grid, q, options);
            } catch (const std::invalid_argument& e) {
                // Only per-value config construction can throw this here.
                throw ConfigError(e.what());
            }
            payload = spec.format == OutputFormat::Csv ? to_csv(result, spec)
                                                       : to_json(result, spec);
            break;
        }
        case Command::Transitions: {
            const analysis::DecayCurve curve =
                analysis::compute_curve(cfg, grid, q, options);
            const analysis::TransitionReport report =
                analysis::find_transitions(curve);
            payload = spec.format == OutputFormat::Csv ? to_csv(report, spec)
                                                       : to_json(report, spec);
            break;
        }
    }
    write_output(payload, spec.out);
}

int main_entry(int argc, const char* const* argv) {
    try {
        const CliResult parsed = parse_cli(argc, argv);
        if (parsed.help_requested) {
            std::cout << parsed.help_text;
            return 0;
        }
        run(parsed.spec, std::cerr);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace zeno::io
