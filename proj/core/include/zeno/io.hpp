#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/analysis.hpp"

namespace zeno::io {

enum class Command { Curve, Sweep, Transitions };
enum class Model { TwoLevel, CollectiveSpin };
enum class OutputFormat { Csv, Json };

// One fully-specified run. Field defaults are the tool defaults; a config
// file overrides them and explicit flags override the file. The same keys
// appear in config files, emitted CSV headers, and JSON params blocks, so
// any output can be replayed.
struct RunSpec {
    Command command = Command::Curve;
    Model model = Model::TwoLevel;

    double strong_coupling = 0.4;  // G
    double weak_coupling = 0.03;   // F
    double strong_ohmicity = 1.0;  // s
    double weak_ohmicity = 1.0;    // r
    double strong_cutoff = 1.0;    // wc
    double weak_cutoff = 1.0;      // ac
    double epsilon = 1.0;
    double delta = 0.05;
    std::optional<double> spin_j;  // required for the collective-spin model
    std::optional<double> beta;    // absent = zero temperature

    double tau_min = 0.05;
    double tau_max = 3.0;
    int tau_steps = 60;
    analysis::Spacing tau_spacing = analysis::Spacing::Log;

    std::optional<std::string> sweep_parameter;  // G | F | j | delta | eps
    std::vector<double> sweep_values;

    OutputFormat format = OutputFormat::Csv;
    std::string out = "-";  // "-" writes to stdout
    bool paper_literal = false;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;

    bool operator==(const RunSpec&) const = default;

    // Cross-field validation (model/j pairing, grid bounds, sweep
    // completeness). Throws ConfigError.
    void validate() const;

    decay::ModelConfig to_model_config() const;
    quad::QuadratureSpec to_quadrature_spec() const;
    analysis::SweepParameter sweep_parameter_enum() const;

    // Canonical `key = value` serialization; parse_config_text inverts it.
    std::string to_config_text() const;
};

// Parses `key = value` lines over `base`. Blank lines are skipped; leading
// '#' markers are stripped first (emitted CSV headers parse as-is); lines
// without '=' after stripping are ignored. Unknown keys and unparsable
// values throw ConfigError naming the key.
RunSpec parse_config_text(std::string_view text, const RunSpec& base = {});

struct CliResult {
    RunSpec spec;
    bool help_requested = false;
    std::string help_text;
};

// Parses `zeno <curve|sweep|transitions> [flags]`. A --config file is
// applied over the defaults first, then explicit flags. Usage problems
// throw ConfigError.
CliResult parse_cli(int argc, const char* const* argv);

// Emission. CSV carries the full parameter snapshot as `# key = value`
// header lines, then a column header row, then rows with 12 significant
// digits. JSON mirrors the snapshot under "params".
std::string to_csv(const analysis::DecayCurve& curve, const RunSpec& spec);
std::string to_csv(const analysis::SweepResult& sweep, const RunSpec& spec);
std::string to_csv(const analysis::TransitionReport& report, const RunSpec& spec);
std::string to_json(const analysis::DecayCurve& curve, const RunSpec& spec);
std::string to_json(const analysis::SweepResult& sweep, const RunSpec& spec);
std::string to_json(const analysis::TransitionReport& report, const RunSpec& spec);

// Executes a validated spec end to end and writes the payload to spec.out.
// Warnings (curve truncation, ignored environment values) go to
// `diagnostics`. Worker count comes from ZENO_THREADS when set.
void run(const RunSpec& spec, std::ostream& diagnostics);

// Process entry: returns 0 on success, 1 on runtime or numerical failure,
// 2 on usage errors.
int main_entry(int argc, const char* const* argv);

} // namespace zeno::io
