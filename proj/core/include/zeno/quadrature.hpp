#pragma once

#include <complex>
#include <functional>

#include "zeno/errors.hpp"

namespace zeno::quad {

// Tolerances and budget for the adaptive integrator. Convergence is declared
// when the summed error estimate drops below max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
};

struct IntegralEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

struct ComplexIntegralEstimate {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;
using Real2Fn = std::function<double(double, double)>;

// Adaptive Gauss(7)/Kronrod(15) integration of f over [a, b].
//
// The interval starts as `initial_panels` equal panels (callers seed this
// from the expected oscillation count) and the panel with the largest error
// estimate is bisected until the tolerance is met. Ties break toward the
// leftmost panel, and the final sum runs left to right, so identical inputs
// give bit-identical results regardless of how many curves are being
// evaluated concurrently.
//
// Throws std::invalid_argument for a > b or an invalid spec, QuadratureError
// (carrying the best estimate) when the subdivision budget is exhausted.
IntegralEstimate integrate_1d(const RealFn& f, double a, double b,
                              const QuadratureSpec& spec = {},
                              int initial_panels = 1);

// Complex-valued variant. Real and imaginary parts share one subdivision
// sequence driven by the combined error, so they stay mutually consistent.
ComplexIntegralEstimate integrate_1d_complex(const ComplexFn& f, double a, double b,
                                             const QuadratureSpec& spec = {},
                                             int initial_panels = 1);

// Iterated integral over the triangle 0 <= t' <= t <= tau of an integrand
// depending only on the inner variable, reduced exactly to one dimension:
//
//   int_0^tau dt int_0^t dt' f(t')  =  int_0^tau (tau - u) f(u) du
//
IntegralEstimate reduce_double(const RealFn& f, double tau,
                               const QuadratureSpec& spec = {},
                               int initial_panels = 1);

ComplexIntegralEstimate reduce_double_complex(const ComplexFn& f, double tau,
                                              const QuadratureSpec& spec = {},
                                              int initial_panels = 1);

// Brute-force midpoint rule for int_0^tau dt int_0^t dt' f(t, t') on an
// n x n grid. Cells below the diagonal use the full-cell midpoint; cells on
// the diagonal contribute their lower triangle, sampled at the centroid.
// O(n^-2) convergent and exact for constants. Slow on purpose: this is the
// independent cross-check for the reduced one-dimensional path.
double integrate_2d_naive(const Real2Fn& f, double tau, int panels);

} // namespace zeno::quad
