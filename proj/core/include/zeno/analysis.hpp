#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/decay.hpp"

namespace zeno::analysis {

enum class Spacing { Linear, Log };

// Strictly increasing measurement-interval grid with `steps` points from
// tau_min to tau_max inclusive. Log spacing requires tau_min > 0.
std::vector<double> make_tau_grid(double tau_min, double tau_max, int steps,
                                  Spacing spacing);

// Decay rate (and optionally survival) sampled on a tau grid. When a
// survival evaluation breaks down mid-grid the curve is cut just before the
// failing point and truncated_at records it; nothing is extrapolated.
struct DecayCurve {
    std::vector<double> tau;
    std::vector<double> gamma;
    std::optional<std::vector<double>> survival;
    std::optional<double> truncated_at;
};

enum class ExtremumKind { Maximum, Minimum };
enum class Refinement { GridOnly, Parabolic };

struct Extremum {
    double tau_star = 0.0;
    double gamma_at = 0.0;
    ExtremumKind kind = ExtremumKind::Maximum;
};

// Zeno / anti-Zeno crossover report: interior extrema of gamma(tau).
// flat_runs lists index ranges (start, length) of three or more equal
// consecutive values, which are skipped rather than guessed at.
struct TransitionReport {
    std::vector<Extremum> extrema;
    Refinement refinement = Refinement::Parabolic;
    std::vector<std::pair<int, int>> flat_runs;
};

struct SweepResult {
    std::string parameter;
    std::vector<double> values;
    std::vector<DecayCurve> curves;
};

// Pointwise comparison of the curves for two adjacent sweep values.
struct PairOrdering {
    double value_lo = 0.0;        // smaller parameter value
    double value_hi = 0.0;        // larger parameter value
    double frac_increase = 0.0;   // fraction of grid points with gamma_hi > gamma_lo
    double frac_decrease = 0.0;
    double mean_lo = 0.0;         // mean gamma over the grid, per curve
    double mean_hi = 0.0;
};

struct OrderingSummary {
    std::vector<PairOrdering> pairs;
};

struct CurveOptions {
    bool with_survival = false;
    bool paper_literal = false;
    // 0 means one worker per hardware thread (capped by the grid size).
    int threads = 0;
};

// Evaluates gamma over the grid, in parallel across points. Results are
// assembled by grid index, so curves are deterministic for any thread
// count. Per-point failures other than perturbative breakdown are rethrown
// as CurveEvaluationError naming the failing tau.
DecayCurve compute_curve(const decay::ModelConfig& cfg,
                         const std::vector<double>& tau_grid,
                         const quad::QuadratureSpec& spec = {},
                         const CurveOptions& options = {});

// Locates interior extrema by sign changes of consecutive differences.
// Parabolic refinement fits the bracketing three points and clamps the
// vertex to the bracket; tau_star values are invariant under adding a
// constant to gamma or scaling it by a positive factor.
TransitionReport find_transitions(const DecayCurve& curve,
                                  Refinement refinement = Refinement::Parabolic);

// Parameters a sweep may vary.
enum class SweepParameter { StrongCoupling, WeakCoupling, SpinJ, Delta, Epsilon };

// One curve per value, all on the same grid, evaluated with the base
// config's remaining parameters. SpinJ requires a collective-spin base.
SweepResult sweep(const decay::ModelConfig& base, SweepParameter parameter,
                  const std::vector<double>& values,
                  const std::vector<double>& tau_grid,
                  const quad::QuadratureSpec& spec = {},
                  const CurveOptions& options = {});

// Direction-neutral monotonicity report for adjacent sweep pairs; callers
// assert the trend they expect from the physics.
OrderingSummary compare_ordering(const SweepResult& sweep);

} // namespace zeno::analysis
