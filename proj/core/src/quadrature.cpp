#include "zeno/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace zeno::quad {

namespace {

// 15-point Kronrod abscissae; even indices are the optimal extension points,
// odd indices (and 0.0) are the embedded 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class V>
struct PanelResult {
    V value{};
    double err = 0.0;
};

inline double norm_of(double v) { return std::fabs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// One Gauss/Kronrod pass over [a, b] with the QUADPACK error estimate:
// the raw |K - G| difference is sharpened through the scaled deviation
// integral so that nearly-singular panels are not underestimated.
template <class V, class F>
PanelResult<V> gk15(const F& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    V fv1[7];
    V fv2[7];
    const V fc = f(centr);

    V resg = kWg[3] * fc;
    V resk = kWgk[7] * fc;
    double resabs = kWgk[7] * norm_of(fc);

    for (int j = 0; j < 7; ++j) {
        const double absc = hlgth * kXgk[j];
        fv1[j] = f(centr - absc);
        fv2[j] = f(centr + absc);
        const V fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (norm_of(fv1[j]) + norm_of(fv2[j]));
    }

    const V reskh = resk * 0.5;
    double resasc = kWgk[7] * norm_of(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (norm_of(fv1[j] - reskh) + norm_of(fv2[j] - reskh));
    }

    const double dhlgth = std::fabs(hlgth);
    resabs *= dhlgth;
    resasc *= dhlgth;

    double err = norm_of((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double epmach = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * epmach)) {
        err = std::max(epmach * 50.0 * resabs, err);
    }

    return {resk * hlgth, err};
}

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double err = 0.0;
    int idx = -1;
};

// Worst error first; equal errors break toward the leftmost panel.
struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

void validate(double a, double b, const QuadratureSpec& spec, int initial_panels) {
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw std::invalid_argument("integration limits must be finite");
    }
    if (a > b) {
        throw std::invalid_argument("integration limits must satisfy a <= b");
    }
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (spec.max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be at least 1");
    }
    if (initial_panels < 1) {
        throw std::invalid_argument("initial_panels must be at least 1");
    }
}

template <class V>
struct AdaptResult {
    V value{};
    double err = 0.0;
    int panels = 0;
};

template <class V, class F>
AdaptResult<V> adapt(const F& f, double a, double b, const QuadratureSpec& spec,
                     int initial_panels) {
    validate(a, b, spec, initial_panels);
    if (a == b) return {};

    struct Stored {
        double a, b;
        V value;
        double err;
    };
    std::vector<Stored> panels;
    panels.reserve(static_cast<std::size_t>(initial_panels) + 64);

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;

    V total{};
    double total_err = 0.0;

    auto add_panel = [&](double pa, double pb) {
        PanelResult<V> r = gk15<V>(f, pa, pb);
        if (!finite_value(r.value) || !std::isfinite(r.err)) {
            throw QuadratureError("integrand produced a non-finite value",
                                  norm_of(total), total_err,
                                  static_cast<int>(panels.size()));
        }
        panels.push_back({pa, pb, r.value, r.err});
        queue.push({pa, pb, r.err, static_cast<int>(panels.size()) - 1});
        total += r.value;
        total_err += r.err;
    };

    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double pa = a + i * width;
        const double pb = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
        add_panel(pa, pb);
    }

    auto converged = [&]() {
        return total_err <= std::max(spec.abs_tol, spec.rel_tol * norm_of(total));
    };

    int active = initial_panels;
    while (!converged()) {
        if (active >= spec.max_subdivisions) {
            throw QuadratureError("subdivision budget exhausted before tolerance",
                                  norm_of(total), total_err, active);
        }
        const Panel worst = queue.top();
        queue.pop();
        const Stored parent = panels[worst.idx];
        total -= parent.value;
        total_err -= parent.err;

        const double mid = 0.5 * (parent.a + parent.b);
        // Left child reuses the parent slot; right child appends.
        {
            PanelResult<V> r = gk15<V>(f, parent.a, mid);
            if (!finite_value(r.value) || !std::isfinite(r.err)) {
                throw QuadratureError("integrand produced a non-finite value",
                                      norm_of(total), total_err, active);
            }
            panels[worst.idx] = {parent.a, mid, r.value, r.err};
            queue.push({parent.a, mid, r.err, worst.idx});
            total += r.value;
            total_err += r.err;
        }
        add_panel(mid, parent.b);
        ++active;
    }

    // Final left-to-right re-sum decouples the result from the subdivision
    // history, keeping it bit-stable.
    std::sort(panels.begin(), panels.end(),
              [](const Stored& x, const Stored& y) { return x.a < y.a; });
    V value{};
    double err = 0.0;
    for (const Stored& p : panels) {
        value += p.value;
        err += p.err;
    }
    return {value, err, active};
}

} // namespace

IntegralEstimate integrate_1d(const RealFn& f, double a, double b,
                              const QuadratureSpec& spec, int initial_panels) {
    auto r = adapt<double>(f, a, b, spec, initial_panels);
    return {r.value, r.err, r.panels};
}

ComplexIntegralEstimate integrate_1d_complex(const ComplexFn& f, double a, double b,
                                             const QuadratureSpec& spec,
                                             int initial_panels) {
    auto r = adapt<std::complex<double>>(f, a, b, spec, initial_panels);
    return {r.value, r.err, r.panels};
}

IntegralEstimate reduce_double(const RealFn& f, double tau,
                               const QuadratureSpec& spec, int initial_panels) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be positive and finite");
    }
    auto g = [&f, tau](double u) { return (tau - u) * f(u); };
    return integrate_1d(g, 0.0, tau, spec, initial_panels);
}

ComplexIntegralEstimate reduce_double_complex(const ComplexFn& f, double tau,
                                              const QuadratureSpec& spec,
                                              int initial_panels) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be positive and finite");
    }
    auto g = [&f, tau](double u) { return (tau - u) * f(u); };
    return integrate_1d_complex(g, 0.0, tau, spec, initial_panels);
}

double integrate_2d_naive(const Real2Fn& f, double tau, int panels) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be positive and finite");
    }
    if (panels < 1) {
        throw std::invalid_argument("panels must be at least 1");
    }
    const double h = tau / panels;
    const double cell = h * h;

    // Kahan summation: 16M+ cell contributions would otherwise accumulate
    // enough round-off to matter at the tolerances this oracle certifies.
    double sum = 0.0;
    double comp = 0.0;
    auto accumulate = [&sum, &comp](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    for (int i = 0; i < panels; ++i) {
        for (int j = 0; j < i; ++j) {
            accumulate(f((i + 0.5) * h, (j + 0.5) * h) * cell);
        }
        accumulate(f((3 * i + 2) * h / 3.0, (3 * i + 1) * h / 3.0) * cell * 0.5);
    }
    return sum;
}

} // namespace zeno::quad
