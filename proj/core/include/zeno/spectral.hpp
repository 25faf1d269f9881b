#pragma once

#include <complex>
#include <optional>

#include "zeno/quadrature.hpp"

namespace zeno::bath {

// Ohmic-family spectral density with exponential cutoff:
//
//   J(w) = strength * w^ohmicity * cutoff^(1 - ohmicity) * exp(-w / cutoff)
//
// ohmicity = 1 is Ohmic, < 1 sub-Ohmic, > 1 super-Ohmic. Parameters are
// validated once at construction so the evaluation paths stay branch-light.
class SpectralParams {
public:
    SpectralParams(double strength, double ohmicity, double cutoff);

    double strength() const noexcept { return strength_; }
    double ohmicity() const noexcept { return ohmicity_; }
    double cutoff() const noexcept { return cutoff_; }

    bool ohmic() const noexcept { return ohmicity_ == 1.0; }

private:
    double strength_;
    double ohmicity_;
    double cutoff_;
};

// Strong (longitudinal) and weak (transverse) bath, one of each. The model
// assumes strong dominates weak; a violated hierarchy is flagged, not
// rejected, so deliberately inverted setups remain computable.
struct BathPair {
    SpectralParams strong;
    SpectralParams weak;

    bool hierarchy_flagged() const noexcept {
        return strong.strength() <= weak.strength() || weak.strength() >= 1.0;
    }
};

// Zero temperature or a finite inverse temperature beta > 0.
class Temperature {
public:
    static Temperature zero() noexcept { return Temperature(std::nullopt); }
    static Temperature inverse_beta(double beta);

    bool is_zero() const noexcept { return !beta_.has_value(); }

    // Only valid at finite temperature.
    double beta() const;

private:
    explicit Temperature(std::optional<double> beta) : beta_(beta) {}
    std::optional<double> beta_;
};

// J(w) for w >= 0; throws std::domain_error for negative frequency.
double spectral_density(double omega, const SpectralParams& p);

// Bath phase functions. The strong bath enters through the twice-integrated
// kernel (real decoherence part and imaginary polaron phase):
//
//   phi_r1(t) = int_0^inf J(w) (4 - 4 cos wt) / w^2 coth(beta w / 2) dw
//   phi_i1(t) = int_0^inf J(w) 4 sin(wt) / w^2 dw
//
// and the weak bath through its bare correlation kernel:
//
//   phi_r2(t) = int_0^inf H(a) cos(at) coth(beta a / 2) da
//   phi_i2(t) = int_0^inf H(a) sin(at) da
//
// At zero temperature with ohmicity 1 these reduce to closed forms
// (2 g ln(1 + wc^2 t^2), 4 g atan(wc t), and the rational Lorentzian pair for
// the weak bath); those fast paths are taken automatically. Everything else
// goes through adaptive quadrature on a compactified half-line.
//
// Requires t >= 0 (phi_i1/phi_i2 are odd, phi_r1/phi_r2 even; callers extend
// by symmetry). Finite temperature with ohmicity < 1 raises
// DivergentIntegralError for the real parts.
double phi_r1(double t, const SpectralParams& p, const Temperature& T,
              const quad::QuadratureSpec& spec = {});
double phi_i1(double t, const SpectralParams& p,
              const quad::QuadratureSpec& spec = {});
double phi_r2(double t, const SpectralParams& p, const Temperature& T,
              const quad::QuadratureSpec& spec = {});
double phi_i2(double t, const SpectralParams& p,
              const quad::QuadratureSpec& spec = {});

// Integral-definition evaluations that never take the closed-form shortcut.
// The unit and acceptance suites hold the fast paths to these.
double phi_r1_quadrature(double t, const SpectralParams& p, const Temperature& T,
                         const quad::QuadratureSpec& spec = {});
double phi_i1_quadrature(double t, const SpectralParams& p,
                         const quad::QuadratureSpec& spec = {});
double phi_r2_quadrature(double t, const SpectralParams& p, const Temperature& T,
                         const quad::QuadratureSpec& spec = {});
double phi_i2_quadrature(double t, const SpectralParams& p,
                         const quad::QuadratureSpec& spec = {});

// Strong-bath correlation factor exp(-phi_r1) * exp(-i phi_i1). Modulus is
// 1 at t = 0 and strictly below 1 for t > 0 at nonzero strength.
std::complex<double> corr_strong(double t, const SpectralParams& strong,
                                 const Temperature& T,
                                 const quad::QuadratureSpec& spec = {});

// Weak-bath kernel phi_r2 - i phi_i2.
std::complex<double> corr_weak(double t, const SpectralParams& weak,
                               const Temperature& T,
                               const quad::QuadratureSpec& spec = {});

// Polaron frequency shift per unit spin deviation:
//
//   kappa = 4 int_0^inf J(w) / w dw = 4 * strength * cutoff * Gamma(ohmicity)
//
// kappa() uses the closed form; kappa_quadrature() integrates the definition.
double kappa(const SpectralParams& strong);
double kappa_quadrature(const SpectralParams& strong,
                        const quad::QuadratureSpec& spec = {});

} // namespace zeno::bath
