// Brute-force reference implementations, deliberately independent of the
// library's adaptive machinery. Slow and simple on purpose.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson rule; panel count is rounded up to even.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + i * h) * (i % 2 != 0 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

// Midpoint rule over the full square [0, tau]^2, Kahan-compensated.
inline double square_midpoint(const std::function<double(double, double)>& f,
                              double tau, int n) {
    const double h = tau / n;
    const double cell = h * h;
    double sum = 0.0;
    double comp = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double term = f((i + 0.5) * h, (j + 0.5) * h) * cell;
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

// Least-squares slope of y = m * x constrained through the origin.
inline double slope_through_origin(const std::vector<double>& x,
                                   const std::vector<double>& y) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += x[i] * y[i];
        den += x[i] * x[i];
    }
    return num / den;
}

} // namespace oracle
