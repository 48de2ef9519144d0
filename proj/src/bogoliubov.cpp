#include "nua/bogoliubov.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nua/errors.hpp"

namespace nua {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallNu = 1e-6;

void require_nu(double nu, const char* where) {
  if (!(nu >= kSmallNu)) throw SmallNuError(std::string(where) + ": nu below 1e-6 makes sinh(pi nu) degenerate");
}

// eps - k without cancellation for large positive k.
double eps_minus_k(const ModeSpec& spec) {
  const double eps = spec.epsilon();
  return spec.k > 0.0 ? spec.m * spec.m / (eps + spec.k) : eps - spec.k;
}

}  // namespace

FrequencyMatchCoeffs frequency_match(const ModeSpec& spec, double T0, const SpecfunOptions& opts) {
  spec.validate();
  const double nu = spec.nu();
  require_nu(nu, "frequency_match");
  const double z = std::exp(std::log(spec.m / spec.w) - spec.w * T0);
  if (!std::isfinite(z) || !(z > 0.0)) throw OverflowError("frequency_match: z = (m/w) e^{-w T0} out of range");

  const BesselJResult j = bessel_j_imag_full(nu, z, opts);
  const double W = spec.w * std::hypot(z, nu);
  const Complex j_dot = -spec.w * z * j.deriv;  // d/dT J_{i nu}
  const Complex i(0.0, 1.0);
  // nu pi / (2 K sinh(pi nu)) with K = nu w.
  const double pref = kPi * std::sqrt(W) / (2.0 * spec.w * std::sinh(kPi * nu));

  FrequencyMatchCoeffs out;
  out.c_plus = -i * pref * (std::conj(j_dot) / W + i * std::conj(j.value));
  out.c_minus = i * pref * (j_dot / W + i * j.value);
  out.W = W;
  out.T0 = T0;
  out.z = z;
  return out;
}

Complex a_coefficient(const ModeSpec& spec, GammaPath path) {
  spec.validate();
  const double nu = spec.nu();
  require_nu(nu, "a_coefficient");
  const double eps = spec.epsilon();
  const Complex lg = log_gamma_complex(Complex(1.0, nu));
  const double phase = nu * std::log(eps_minus_k(spec) / (2.0 * spec.w)) - lg.imag();
  const double lead = std::sqrt(nu / (eps * spec.w)) * std::exp(kPi * nu / 2.0) / (2.0 * std::sinh(kPi * nu));
  const double inv_gamma_abs =
      path == GammaPath::direct ? std::exp(-lg.real()) : std::sqrt(std::sinh(kPi * nu) / (kPi * nu));
  return -lead * inv_gamma_abs * std::polar(1.0, phase);
}

Complex b_coefficient(const ModeSpec& spec) {
  return -a_coefficient(spec) * std::exp(-kPi * spec.nu());
}

double c_constant(const ModeSpec& spec) {
  return std::sqrt(kPi * spec.w / spec.nu());
}

BogoliubovPair alpha_beta(const ModeSpec& spec, const FrequencyMatchCoeffs& coeffs) {
  const Complex A = a_coefficient(spec);
  const Complex B = -A * std::exp(-kPi * spec.nu());
  const double C = c_constant(spec);
  BogoliubovPair out;
  out.alpha = -C * coeffs.c_plus * A + C * coeffs.c_minus * std::conj(B);
  out.beta = C * coeffs.c_plus * B - C * coeffs.c_minus * std::conj(A);
  out.k = spec.k;
  return out;
}

double real_a_wavenumber(const ModeSpec& spec, int j) {
  spec.validate();
  const double nu = spec.nu();
  require_nu(nu, "real_a_wavenumber");
  const double arg_gamma = log_gamma_complex(Complex(1.0, nu)).imag();
  const double u = 2.0 * spec.w * std::exp((j * kPi + arg_gamma) / nu);
  if (!std::isfinite(u) || !(u > 0.0)) throw DomainError("real_a_wavenumber: eps - k out of range for this j");
  return (spec.m * spec.m - u * u) / (2.0 * u);
}

Complex q_from_coefficients(Complex c_plus, Complex c_minus, double nu) {
  const double s = std::exp(-kPi * nu);
  return (s * std::conj(c_plus) + std::conj(c_minus)) / (c_plus + s * c_minus);
}

Complex q_alternate_sign(Complex c_plus, Complex c_minus, double nu) {
  const double s = std::exp(-kPi * nu);
  return (s * std::conj(c_plus) - std::conj(c_minus)) / (c_plus + s * c_minus);
}

SqueezingParam squeezing_q(const ModeSpec& spec, double T0, const SpecfunOptions& opts) {
  const FrequencyMatchCoeffs c = frequency_match(spec, T0, opts);
  return {q_from_coefficients(c.c_plus, c.c_minus, spec.nu()), T0, spec.nu()};
}

double asymptotic_q_magnitude(double nu) {
  if (!(nu > 0.0)) throw DomainError("asymptotic_q_magnitude: nu must be positive");
  return std::exp(-kPi * nu);
}

}  // namespace nua
