#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"

#include "io_detail.hpp"
#include "zeno/io.hpp"

namespace zeno::io {

namespace {

using namespace detail;

// Raw flag values; only flags the user actually passed are copied into the
// RunSpec, so file-provided values survive unless explicitly overridden.
struct Staging {
    std::string config_path;
    std::string model;
    double strong_coupling = 0.0;
    double weak_coupling = 0.0;
    double strong_ohmicity = 0.0;
    double weak_ohmicity = 0.0;
    double strong_cutoff = 0.0;
    double weak_cutoff = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    double spin_j = 0.0;
    double beta = 0.0;
    bool zero_temp = false;
    double tau_min = 0.0;
    double tau_max = 0.0;
    int tau_steps = 0;
    std::string tau_spacing;
    std::string sweep_param;
    std::vector<double> sweep_values;
    std::string format;
    std::string out;
    bool paper_literal = false;
    double abs_tol = 0.0;
    double rel_tol = 0.0;
};

void add_run_options(CLI::App* cmd, Staging& st) {
    cmd->add_option("--config", st.config_path,
                    "Config file with key = value lines; explicit flags "
                    "override file values");
    cmd->add_option("--model", st.model,
                    "Model: sb (two-level) or lsb (collective spin)");
    cmd->add_option("--G", st.strong_coupling, "Strong bath coupling strength");
    cmd->add_option("--F", st.weak_coupling, "Weak bath coupling strength");
    cmd->add_option("--s", st.strong_ohmicity, "Strong bath ohmicity exponent");
    cmd->add_option("--r", st.weak_ohmicity, "Weak bath ohmicity exponent");
    cmd->add_option("--wc", st.strong_cutoff, "Strong bath cutoff frequency");
    cmd->add_option("--ac", st.weak_cutoff, "Weak bath cutoff frequency");
    cmd->add_option("--eps", st.epsilon, "Level splitting");
    cmd->add_option("--delta", st.delta, "Tunneling amplitude");
    cmd->add_option("--j", st.spin_j,
                    "Collective spin quantum number (lsb model)");
    CLI::Option* beta =
        cmd->add_option("--beta", st.beta, "Inverse temperature");
    CLI::Option* zero =
        cmd->add_flag("--zero-temp", st.zero_temp, "Zero temperature");
    beta->excludes(zero);
    zero->excludes(beta);
    cmd->add_option("--tau-min", st.tau_min, "Smallest measurement interval");
    cmd->add_option("--tau-max", st.tau_max, "Largest measurement interval");
    cmd->add_option("--tau-steps", st.tau_steps, "Number of grid points");
    cmd->add_option("--tau-spacing", st.tau_spacing,
                    "Grid spacing: linear or log");
    cmd->add_option("--sweep-param", st.sweep_param,
                    "Parameter to sweep: G, F, j, delta, or eps");
    cmd->add_option("--sweep-values", st.sweep_values,
                    "Comma-separated sweep values")
        ->delimiter(',');
    cmd->add_option("--format", st.format, "Output format: csv or json");
    cmd->add_option("--out", st.out, "Output path, or - for stdout");
    cmd->add_flag("--paper-literal", st.paper_literal,
                  "Use the plain Lorentzian dressing in the two-level "
                  "boundary term");
    cmd->add_option("--abs-tol", st.abs_tol, "Quadrature absolute tolerance");
    cmd->add_option("--rel-tol", st.rel_tol, "Quadrature relative tolerance");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

} // namespace

CliResult parse_cli(int argc, const char* const* argv) {
    CLI::App app{
        "Modified decay rates of a repeatedly measured two-level or "
        "collective-spin system coupled to strong and weak bosonic baths"};
    app.name("zeno");
    app.require_subcommand(1);

    Staging st;
    CLI::App* curve =
        app.add_subcommand("curve", "Decay rate and survival over a tau grid");
    CLI::App* sweep = app.add_subcommand(
        "sweep", "One rate curve per value of a swept parameter");
    CLI::App* transitions = app.add_subcommand(
        "transitions", "Zeno / anti-Zeno crossovers of the rate curve");
    add_run_options(curve, st);
    add_run_options(sweep, st);
    add_run_options(transitions, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream help, err;
            app.exit(e, help, err);
            return {RunSpec{}, true, help.str()};
        }
        throw ConfigError(e.what());
    }

    CLI::App* active = app.get_subcommands().front();

    RunSpec spec;
    if (active->count("--config") > 0) {
        spec = parse_config_text(read_file(st.config_path), spec);
    }
    spec.command = parse_command(active->get_name());

    using Apply = std::function<void(RunSpec&, const Staging&)>;
    const std::pair<const char*, Apply> overrides[] = {
        {"--model", [](RunSpec& s, const Staging& t) { s.model = parse_model(t.model); }},
        {"--G", [](RunSpec& s, const Staging& t) { s.strong_coupling = t.strong_coupling; }},
        {"--F", [](RunSpec& s, const Staging& t) { s.weak_coupling = t.weak_coupling; }},
        {"--s", [](RunSpec& s, const Staging& t) { s.strong_ohmicity = t.strong_ohmicity; }},
        {"--r", [](RunSpec& s, const Staging& t) { s.weak_ohmicity = t.weak_ohmicity; }},
        {"--wc", [](RunSpec& s, const Staging& t) { s.strong_cutoff = t.strong_cutoff; }},
        {"--ac", [](RunSpec& s, const Staging& t) { s.weak_cutoff = t.weak_cutoff; }},
        {"--eps", [](RunSpec& s, const Staging& t) { s.epsilon = t.epsilon; }},
        {"--delta", [](RunSpec& s, const Staging& t) { s.delta = t.delta; }},
        {"--j", [](RunSpec& s, const Staging& t) { s.spin_j = t.spin_j; }},
        {"--beta", [](RunSpec& s, const Staging& t) { s.beta = t.beta; }},
        {"--zero-temp", [](RunSpec& s, const Staging&) { s.beta.reset(); }},
        {"--tau-min", [](RunSpec& s, const Staging& t) { s.tau_min = t.tau_min; }},
        {"--tau-max", [](RunSpec& s, const Staging& t) { s.tau_max = t.tau_max; }},
        {"--tau-steps", [](RunSpec& s, const Staging& t) { s.tau_steps = t.tau_steps; }},
        {"--tau-spacing", [](RunSpec& s, const Staging& t) { s.tau_spacing = parse_spacing(t.tau_spacing); }},
        {"--sweep-param",
         [](RunSpec& s, const Staging& t) {
             check_sweep_name(t.sweep_param);
             s.sweep_parameter = t.sweep_param;
         }},
        {"--sweep-values", [](RunSpec& s, const Staging& t) { s.sweep_values = t.sweep_values; }},
        {"--format", [](RunSpec& s, const Staging& t) { s.format = parse_format(t.format); }},
        {"--out", [](RunSpec& s, const Staging& t) { s.out = t.out; }},
        {"--paper-literal", [](RunSpec& s, const Staging&) { s.paper_literal = true; }},
        {"--abs-tol", [](RunSpec& s, const Staging& t) { s.abs_tol = t.abs_tol; }},
        {"--rel-tol", [](RunSpec& s, const Staging& t) { s.rel_tol = t.rel_tol; }},
    };
    for (const auto& [name, apply] : overrides) {
        if (active->count(name) > 0) apply(spec, st);
    }

    return {spec, false, ""};
}

} // namespace zeno::io
