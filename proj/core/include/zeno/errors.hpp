#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// Adaptive integration hit its subdivision budget before reaching tolerance.
// Carries the best estimate so callers can decide whether it is usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate,
                    double error_estimate, int subdivisions)
        : std::runtime_error(what),
          best_estimate_(best_estimate),
          error_estimate_(error_estimate),
          subdivisions_(subdivisions) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }
    int subdivisions() const noexcept { return subdivisions_; }

private:
    double best_estimate_;
    double error_estimate_;
    int subdivisions_;
};

// Requested integral has no finite value for the given parameters.
class DivergentIntegralError : public std::domain_error {
public:
    explicit DivergentIntegralError(const std::string& what)
        : std::domain_error(what) {}
};

// Short-time expansion of the survival probability left (0, 1]; the
// linearized rate is meaningless at this point.
class PerturbativeBreakdownError : public std::runtime_error {
public:
    PerturbativeBreakdownError(const std::string& what, double survival, double tau)
        : std::runtime_error(what), survival_(survival), tau_(tau) {}

    double survival() const noexcept { return survival_; }
    double tau() const noexcept { return tau_; }

private:
    double survival_;
    double tau_;
};

// Invalid run configuration (bad flag/key combination, missing required
// parameter, malformed config file). Maps to the usage exit code.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A curve evaluation failed at a specific measurement interval.
class CurveEvaluationError : public std::runtime_error {
public:
    CurveEvaluationError(const std::string& what, double tau)
        : std::runtime_error(what), tau_(tau) {}

    double tau() const noexcept { return tau_; }

private:
    double tau_;
};

} // namespace zeno
