#include "zeno/decay.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace zeno::decay {

namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

void require_tau(double tau) {
    if (!std::isfinite(tau) || tau <= 0.0) {
        throw std::domain_error("measurement interval tau must be > 0");
    }
}

// Initial panel count matched to the fastest phase rate present, so the
// first Kronrod pass already resolves every oscillation.
int guard_panels(double tau, double phase_rate) {
    const double cycles = tau * std::fabs(phase_rate) / std::numbers::pi;
    const int n = static_cast<int>(std::ceil(cycles));
    return std::clamp(n, 1, 512);
}

double require_spin(const ModelConfig& cfg) {
    if (!cfg.large_spin()) {
        throw std::invalid_argument(
            "collective-spin quantity requires a configured spin_j");
    }
    return *cfg.spin_j();
}

// Round-off can push the expansion a hair past 1 at tiny tau; only a
// genuine excursion counts as breakdown.
double check_survival(double s, double tau) {
    if (s > 1.0 && s <= 1.0 + 1e-12) s = 1.0;
    if (!(s > 0.0) || s > 1.0) {
        throw PerturbativeBreakdownError(
            "survival expansion left (0, 1] at tau = " + std::to_string(tau), s,
            tau);
    }
    return s;
}

struct Shared {
    double eps;
    double delta;
    double j;          // 0.5 for the two-level model
    double phase;      // eps + kappa (1 - 2j); reduces to eps at j = 1/2
    int panels;
    const bath::SpectralParams* strong;
    const bath::SpectralParams* weak;
    const bath::Temperature* temperature;
    const quad::QuadratureSpec* spec;

    double exr(double t) const {
        return std::exp(-bath::phi_r1(t, *strong, *temperature, *spec));
    }
    double theta(double t) const {
        return phase * t - bath::phi_i1(t, *strong, *spec);
    }
};

Shared make_context(double tau, const ModelConfig& cfg,
                   const quad::QuadratureSpec& spec, double j,
                   std::optional<double> kappa_override) {
    const double kap = kappa_override.value_or(bath::kappa(cfg.baths().strong));
    const double shift = kap * (1.0 - 2.0 * j);
    const double rate = std::fabs(cfg.epsilon()) + std::fabs(shift);
    return {cfg.epsilon(),
            cfg.delta(),
            j,
            cfg.epsilon() + shift,
            guard_panels(tau, rate),
            &cfg.baths().strong,
            &cfg.baths().weak,
            &cfg.temperature(),
            &spec};
}

// Five-term linearized rate, shared by both models; only the j-dependent
// coefficients and the phase shift differ. survival_sinsq_ratio is the
// survival-expansion multiplier on the printed sin^2 term: 1 for the
// two-level model, 2 for the collective-spin model.
GammaTerms five_terms(double tau, const Shared& sh, bool paper_literal,
                      double survival_sinsq_ratio) {
    const quad::QuadratureSpec& q = *sh.spec;
    const double j = sh.j;
    const double eps = sh.eps;
    const double d2 = sh.delta * sh.delta;
    const double sin_half = std::sin(0.5 * eps * tau);

    GammaTerms out;

    out.weak_cos =
        (4.0 * j / tau) *
        quad::reduce_double(
            [&](double u) {
                return sh.exr(u) * std::cos(sh.theta(u)) *
                       bath::phi_r2(u, *sh.weak, *sh.temperature, q);
            },
            tau, q, sh.panels)
            .value;

    out.weak_sin =
        (4.0 * j / tau) *
        quad::reduce_double(
            [&](double u) {
                return sh.exr(u) * std::sin(sh.theta(u)) *
                       bath::phi_i2(u, *sh.weak, q);
            },
            tau, q, sh.panels)
            .value;

    if (sh.delta != 0.0) {
        out.tunnel_triangle =
            (d2 * j / tau) *
            quad::reduce_double(
                [&](double u) { return sh.exr(u) * std::cos(sh.theta(u)); },
                tau, q, sh.panels)
                .value;

        out.tunnel_sinsq = (2.0 * j * d2 / (tau * eps * eps)) * sin_half * sin_half;
        out.tunnel_sinsq_survival = survival_sinsq_ratio * out.tunnel_sinsq;

        const double wc = sh.strong->cutoff();
        const double boundary =
            quad::integrate_1d(
                [&](double t) {
                    const double dress =
                        paper_literal ? 1.0 / (1.0 + wc * wc * t * t) : sh.exr(t);
                    return dress *
                           std::cos(sh.theta(t) - 0.5 * eps * tau);
                },
                0.0, tau, q, sh.panels)
                .value;
        out.tunnel_boundary = -(2.0 * j * d2 / (tau * eps)) * sin_half * boundary;
    }

    return out;
}

// Second-order survival via the complex double-integral path. Kept separate
// from the five real quadratures above so the two routes stay independent.
// sinsq_factor carries the model's survival-expansion sin^2 coefficient
// (2j for the two-level model, 4j for the collective-spin model).
SurvivalDetail survival_detail_impl(double tau, const Shared& sh,
                                    double sinsq_factor) {
    const quad::QuadratureSpec& q = *sh.spec;
    const double j = sh.j;
    const double eps = sh.eps;
    const double d2 = sh.delta * sh.delta;
    const double sin_half = std::sin(0.5 * eps * tau);

    auto dressed = [&](double u) {
        return bath::corr_strong(u, *sh.strong, *sh.temperature, q) *
               std::exp(kI * (sh.phase * u));
    };

    const complex<double> weak_part =
        quad::reduce_double_complex(
            [&](double u) {
                return dressed(u) *
                       bath::corr_weak(u, *sh.weak, *sh.temperature, q);
            },
            tau, q, sh.panels)
            .value;

    double s = 1.0 - 4.0 * j * weak_part.real();

    if (sh.delta != 0.0) {
        const complex<double> triangle =
            quad::reduce_double_complex(dressed, tau, q, sh.panels).value;
        const complex<double> boundary =
            quad::integrate_1d_complex(dressed, 0.0, tau, q, sh.panels).value;

        s -= d2 * j * triangle.real();
        s -= (sinsq_factor * d2 / (eps * eps)) * sin_half * sin_half;
        s += (2.0 * d2 * j / eps) * sin_half *
             (std::exp(-kI * (0.5 * eps * tau)) * boundary).real();
    }

    SurvivalDetail out;
    out.value = check_survival(s, tau);
    out.perturbative_warning = (1.0 - out.value) > 0.1;
    return out;
}

} // namespace

ModelConfig::ModelConfig(double epsilon, double delta, bath::BathPair baths,
                         bath::Temperature temperature,
                         std::optional<double> spin_j)
    : epsilon_(epsilon),
      delta_(delta),
      baths_(baths),
      temperature_(temperature),
      spin_j_(spin_j) {
    if (!std::isfinite(epsilon) || epsilon == 0.0) {
        throw std::invalid_argument("epsilon must be nonzero and finite");
    }
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("delta must be finite");
    }
    if (spin_j_.has_value()) {
        const double twice = 2.0 * *spin_j_;
        if (!std::isfinite(twice) || twice < 0.5 ||
            std::fabs(twice - std::round(twice)) > 1e-9) {
            throw std::invalid_argument(
                "spin_j must be a positive half-integer (1/2, 1, 3/2, ...)");
        }
    }
}

SurvivalDetail survival_sb_detail(double tau, const ModelConfig& cfg,
                                  const quad::QuadratureSpec& spec) {
    require_tau(tau);
    return survival_detail_impl(tau, make_context(tau, cfg, spec, 0.5, 0.0), 1.0);
}

double survival_sb(double tau, const ModelConfig& cfg,
                   const quad::QuadratureSpec& spec) {
    return survival_sb_detail(tau, cfg, spec).value;
}

GammaTerms gamma_sb_terms(double tau, const ModelConfig& cfg,
                          const quad::QuadratureSpec& spec, bool paper_literal) {
    require_tau(tau);
    return five_terms(tau, make_context(tau, cfg, spec, 0.5, 0.0), paper_literal,
                      1.0);
}

double gamma_sb(double tau, const ModelConfig& cfg,
                const quad::QuadratureSpec& spec, bool paper_literal) {
    return gamma_sb_terms(tau, cfg, spec, paper_literal).total();
}

SurvivalDetail survival_ls_detail(double tau, const ModelConfig& cfg,
                                  const quad::QuadratureSpec& spec) {
    require_tau(tau);
    const double j = require_spin(cfg);
    return survival_detail_impl(
        tau, make_context(tau, cfg, spec, j, std::nullopt), 4.0 * j);
}

double survival_ls(double tau, const ModelConfig& cfg,
                   const quad::QuadratureSpec& spec) {
    return survival_ls_detail(tau, cfg, spec).value;
}

GammaTerms gamma_ls_terms(double tau, const ModelConfig& cfg,
                          const quad::QuadratureSpec& spec,
                          std::optional<double> kappa_override) {
    require_tau(tau);
    const double j = require_spin(cfg);
    return five_terms(tau, make_context(tau, cfg, spec, j, kappa_override), false,
                      2.0);
}

double gamma_ls(double tau, const ModelConfig& cfg,
                const quad::QuadratureSpec& spec) {
    return gamma_ls_terms(tau, cfg, spec).total();
}

double survival(double tau, const ModelConfig& cfg,
                const quad::QuadratureSpec& spec) {
    return survival_detail(tau, cfg, spec).value;
}

SurvivalDetail survival_detail(double tau, const ModelConfig& cfg,
                               const quad::QuadratureSpec& spec) {
    return cfg.large_spin() ? survival_ls_detail(tau, cfg, spec)
                            : survival_sb_detail(tau, cfg, spec);
}

double gamma_rate(double tau, const ModelConfig& cfg,
                  const quad::QuadratureSpec& spec, bool paper_literal) {
    return cfg.large_spin() ? gamma_ls(tau, cfg, spec)
                            : gamma_sb(tau, cfg, spec, paper_literal);
}

double gamma_from_survival(double tau, double survival) {
    require_tau(tau);
    if (!(survival > 0.0) || survival > 1.0) {
        throw std::domain_error("survival must lie in (0, 1]");
    }
    return -std::log(survival) / tau;
}

double d1_phase(double t, const ModelConfig& cfg, double j,
                const quad::QuadratureSpec& spec) {
    const double kap = bath::kappa(cfg.baths().strong);
    return (cfg.epsilon() + kap * (1.0 - 2.0 * j)) * t -
           bath::phi_i1(t, cfg.baths().strong, spec);
}

double d2_phase(double t, double tau, const ModelConfig& cfg, double j,
                const quad::QuadratureSpec& spec) {
    const double kap = bath::kappa(cfg.baths().strong);
    return (cfg.epsilon() - kap * (2.0 * j - 1.0)) * t -
           0.5 * cfg.epsilon() * tau - bath::phi_i1(t, cfg.baths().strong, spec);
}

double n_measurement_survival(double tau, int n, const ModelConfig& cfg,
                              const quad::QuadratureSpec& spec) {
    if (n < 1) {
        throw std::invalid_argument("measurement count must be at least 1");
    }
    return std::pow(survival(tau, cfg, spec), n);
}

} // namespace zeno::decay
