#include "zeno/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace zeno::analysis {

namespace {

void validate_grid(const std::vector<double>& tau) {
    if (tau.empty()) {
        throw std::invalid_argument("tau grid must not be empty");
    }
    double prev = 0.0;
    for (double t : tau) {
        if (!std::isfinite(t) || t <= prev) {
            throw std::invalid_argument(
                "tau grid must be finite, positive, and strictly increasing");
        }
        prev = t;
    }
}

int resolve_threads(int requested, std::size_t points) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    return static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(n), points));
}

const char* parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::StrongCoupling: return "G";
        case SweepParameter::WeakCoupling: return "F";
        case SweepParameter::SpinJ: return "j";
        case SweepParameter::Delta: return "delta";
        case SweepParameter::Epsilon: return "eps";
    }
    return "?";
}

decay::ModelConfig with_parameter(const decay::ModelConfig& base,
                                  SweepParameter p, double value) {
    const bath::BathPair& b = base.baths();
    switch (p) {
        case SweepParameter::StrongCoupling:
            return {base.epsilon(), base.delta(),
                    {bath::SpectralParams(value, b.strong.ohmicity(),
                                          b.strong.cutoff()),
                     b.weak},
                    base.temperature(), base.spin_j()};
        case SweepParameter::WeakCoupling:
            return {base.epsilon(), base.delta(),
                    {b.strong,
                     bath::SpectralParams(value, b.weak.ohmicity(),
                                          b.weak.cutoff())},
                    base.temperature(), base.spin_j()};
        case SweepParameter::SpinJ:
            if (!base.large_spin()) {
                throw ConfigError(
                    "sweeping j requires the collective-spin model");
            }
            return {base.epsilon(), base.delta(), b, base.temperature(), value};
        case SweepParameter::Delta:
            return {base.epsilon(), value, b, base.temperature(), base.spin_j()};
        case SweepParameter::Epsilon:
            return {value, base.delta(), b, base.temperature(), base.spin_j()};
    }
    throw std::logic_error("unreachable sweep parameter");
}

// Vertex of the parabola through three bracketing points, written entirely
// in differences so it is exactly invariant under gamma -> a * gamma + b
// with a > 0. Falls back to the middle point when the fit degenerates.
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                        double y2) {
    const double h01 = x1 - x0;
    const double h12 = x2 - x1;
    const double num = h01 * h01 * (y1 - y2) - h12 * h12 * (y1 - y0);
    const double den = h01 * (y1 - y2) - h12 * (y1 - y0);
    if (den == 0.0) return x1;
    const double vertex = x1 - 0.5 * num / den;
    return std::clamp(vertex, x0, x2);
}

// Quadratic Lagrange interpolation of the fitted parabola at x.
double parabolic_value(double x, double x0, double y0, double x1, double y1,
                       double x2, double y2) {
    const double l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
    const double l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
    const double l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    return y0 * l0 + y1 * l1 + y2 * l2;
}

} // namespace

std::vector<double> make_tau_grid(double tau_min, double tau_max, int steps,
                                  Spacing spacing) {
    if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || tau_min <= 0.0 ||
        tau_min >= tau_max) {
        throw std::invalid_argument("need 0 < tau_min < tau_max and finite");
    }
    if (steps < 2) {
        throw std::invalid_argument("tau grid needs at least 2 steps");
    }

    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double lo = spacing == Spacing::Log ? std::log(tau_min) : tau_min;
    const double hi = spacing == Spacing::Log ? std::log(tau_max) : tau_max;
    for (int i = 0; i < steps; ++i) {
        const double x = lo + (hi - lo) * i / (steps - 1);
        grid[static_cast<std::size_t>(i)] =
            spacing == Spacing::Log ? std::exp(x) : x;
    }
    grid.front() = tau_min;
    grid.back() = tau_max;
    return grid;
}

DecayCurve compute_curve(const decay::ModelConfig& cfg,
                         const std::vector<double>& tau_grid,
                         const quad::QuadratureSpec& spec,
                         const CurveOptions& options) {
    validate_grid(tau_grid);
    const std::size_t n = tau_grid.size();

    std::vector<double> gamma(n, 0.0);
    std::vector<double> survival(n, 1.0);
    std::vector<std::exception_ptr> failures(n);
    std::vector<char> breakdown(n, 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                if (options.with_survival) {
                    survival[i] = decay::survival(tau_grid[i], cfg, spec);
                }
                gamma[i] = decay::gamma_rate(tau_grid[i], cfg, spec,
                                             options.paper_literal);
            } catch (const PerturbativeBreakdownError&) {
                breakdown[i] = 1;
                failures[i] = std::current_exception();
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const int threads = resolve_threads(options.threads, n);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    // First failure in grid order decides the outcome: breakdown truncates,
    // anything else is an error at that tau.
    std::size_t cut = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i]) continue;
        if (breakdown[i]) {
            if (i == 0) std::rethrow_exception(failures[i]);
            cut = i;
            break;
        }
        try {
            std::rethrow_exception(failures[i]);
        } catch (const std::exception& e) {
            throw CurveEvaluationError("curve evaluation failed at tau = " +
                                           std::to_string(tau_grid[i]) + ": " +
                                           e.what(),
                                       tau_grid[i]);
        }
    }

    DecayCurve curve;
    curve.tau.assign(tau_grid.begin(), tau_grid.begin() + cut);
    gamma.resize(cut);
    curve.gamma = std::move(gamma);
    if (options.with_survival) {
        survival.resize(cut);
        curve.survival = std::move(survival);
    }
    if (cut < n) curve.truncated_at = tau_grid[cut];
    return curve;
}

TransitionReport find_transitions(const DecayCurve& curve,
                                  Refinement refinement) {
    const std::vector<double>& x = curve.tau;
    const std::vector<double>& y = curve.gamma;
    if (x.size() != y.size()) {
        throw std::invalid_argument("curve tau/gamma lengths differ");
    }
    if (x.size() < 3) {
        throw std::invalid_argument(
            "transition detection needs at least 3 grid points");
    }
    validate_grid(x);
    for (double g : y) {
        if (!std::isfinite(g)) {
            throw std::invalid_argument("curve contains non-finite gamma");
        }
    }

    TransitionReport report;
    report.refinement = refinement;

    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n;) {
        std::size_t run = i;
        while (run + 1 < n && y[run + 1] == y[i]) ++run;
        if (run - i + 1 >= 3) {
            report.flat_runs.emplace_back(static_cast<int>(i),
                                          static_cast<int>(run - i + 1));
        }
        if (run > i) { // plateau: no localizable extremum
            i = run;
            continue;
        }
        if (i == 0) {
            ++i;
            continue;
        }
        const double dl = y[i] - y[i - 1];
        const double dr = y[i + 1] - y[i];
        if (dl == 0.0 || dr == 0.0 || (dl > 0.0) == (dr > 0.0)) {
            ++i;
            continue;
        }

        Extremum e;
        e.kind = dl > 0.0 ? ExtremumKind::Maximum : ExtremumKind::Minimum;
        if (refinement == Refinement::Parabolic) {
            e.tau_star = parabolic_vertex(x[i - 1], y[i - 1], x[i], y[i],
                                          x[i + 1], y[i + 1]);
            e.gamma_at = parabolic_value(e.tau_star, x[i - 1], y[i - 1], x[i],
                                         y[i], x[i + 1], y[i + 1]);
        } else {
            e.tau_star = x[i];
            e.gamma_at = y[i];
        }
        report.extrema.push_back(e);
        ++i;
    }
    return report;
}

SweepResult sweep(const decay::ModelConfig& base, SweepParameter parameter,
                  const std::vector<double>& values,
                  const std::vector<double>& tau_grid,
                  const quad::QuadratureSpec& spec,
                  const CurveOptions& options) {
    if (values.empty()) {
        throw std::invalid_argument("sweep needs at least one value");
    }
    SweepResult result;
    result.parameter = parameter_name(parameter);
    result.values = values;
    result.curves.reserve(values.size());
    for (double v : values) {
        result.curves.push_back(
            compute_curve(with_parameter(base, parameter, v), tau_grid, spec,
                          options));
    }
    return result;
}

OrderingSummary compare_ordering(const SweepResult& sweep) {
    if (sweep.curves.size() < 2) {
        throw std::invalid_argument("ordering needs at least two curves");
    }
    if (sweep.values.size() != sweep.curves.size()) {
        throw std::invalid_argument("sweep values/curves count mismatch");
    }
    for (const DecayCurve& c : sweep.curves) {
        if (c.tau != sweep.curves.front().tau) {
            throw std::invalid_argument("ordering requires identical tau grids");
        }
    }

    OrderingSummary summary;
    const std::size_t n = sweep.curves.front().tau.size();
    for (std::size_t k = 0; k + 1 < sweep.curves.size(); ++k) {
        const std::vector<double>& lo = sweep.curves[k].gamma;
        const std::vector<double>& hi = sweep.curves[k + 1].gamma;
        PairOrdering p;
        p.value_lo = sweep.values[k];
        p.value_hi = sweep.values[k + 1];
        std::size_t up = 0;
        std::size_t down = 0;
        double sum_lo = 0.0;
        double sum_hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (hi[i] > lo[i]) ++up;
            if (hi[i] < lo[i]) ++down;
            sum_lo += lo[i];
            sum_hi += hi[i];
        }
        p.frac_increase = static_cast<double>(up) / static_cast<double>(n);
        p.frac_decrease = static_cast<double>(down) / static_cast<double>(n);
        p.mean_lo = sum_lo / static_cast<double>(n);
        p.mean_hi = sum_hi / static_cast<double>(n);
        summary.pairs.push_back(p);
    }
    return summary;
}

} // namespace zeno::analysis
