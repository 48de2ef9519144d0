#include "nua/spacetime.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nua {

namespace {

constexpr double kPi = std::numbers::pi;
// Largest argument with exp() finite in double.
constexpr double kExpSafe = 709.0;

void require_finite_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw ValidationError(std::string("ModeSpec: ") + what + " must be finite and positive");
  }
}

// (m/w) e^{s}, formed in log space so that only the final result can overflow.
double scaled_exp(double m, double w, double s) {
  const double v = std::exp(std::log(m / w) + s);
  if (!std::isfinite(v)) throw OverflowError("mode argument overflows");
  return v;
}

struct SpatialFactor {
  double value;
  double d_space;
};

SpatialFactor spatial_factor(const ModeSpec& spec, double X, const SpecfunOptions& opts) {
  const double x = scaled_exp(spec.m, spec.w, spec.w * X);
  const MacdonaldResult k = macdonald_k_imag_full(spec.nu(), x, opts);
  return {k.value, k.deriv * spec.w * x};
}

}  // namespace

void ModeSpec::validate() const {
  require_finite_positive(m, "m");
  require_finite_positive(w, "w");
  require_finite_positive(K, "K");
  if (!std::isfinite(k)) throw ValidationError("ModeSpec: k must be finite");
}

MinkowskiPoint nua_to_minkowski(NuaPoint p, double w) {
  if (!(w > 0.0)) throw DomainError("nua_to_minkowski: w must be positive");
  const double sum = w * (p.T + p.X);
  const double diff = w * (p.T - p.X);
  if (!(std::abs(sum) <= kExpSafe && std::abs(diff) <= kExpSafe)) {
    throw OverflowError("nua_to_minkowski: |w(T +- X)| beyond the exp-safe range");
  }
  const double plus = 2.0 * std::sinh(sum) / w;
  const double minus = -std::exp(-diff) / w;
  return {0.5 * (plus + minus), 0.5 * (plus - minus)};
}

NuaPoint minkowski_to_nua(MinkowskiPoint p, double w) {
  if (!(w > 0.0)) throw DomainError("minkowski_to_nua: w must be positive");
  const double minus = p.t - p.x;
  if (!(minus < 0.0)) throw RegionError("minkowski_to_nua: t - x >= 0 lies outside the chart");
  const double sum = std::asinh(0.5 * w * (p.t + p.x)) / w;
  const double diff = -std::log(-w * minus) / w;
  return {0.5 * (sum + diff), 0.5 * (sum - diff)};
}

double conformal_factor(NuaPoint p, double w) {
  const double v = std::exp(-2.0 * w * p.T) + std::exp(2.0 * w * p.X);
  if (!std::isfinite(v)) throw OverflowError("conformal_factor: overflow");
  return v;
}

double proper_acceleration(double T, double X0, double w) {
  const double a = -2.0 * w * T;
  const double b = 2.0 * w * X0;
  const double hi = std::max(a, b);
  const double log_sum = hi + std::log1p(std::exp(std::min(a, b) - hi));
  return w * std::exp(b - 1.5 * log_sum);
}

ModeJet mode_R_plus(const ModeSpec& spec, NuaPoint p, const SpecfunOptions& opts) {
  spec.validate();
  const double nu = spec.nu();
  const double pref = std::sqrt(nu / (kPi * spec.w));
  const double z = scaled_exp(spec.m, spec.w, -spec.w * p.T);
  const BesselJResult j = bessel_j_imag_full(nu, z, opts);
  const SpatialFactor g = spatial_factor(spec, p.X, opts);
  const Complex j_dot = -spec.w * z * j.deriv;
  return {pref * j.value * g.value, pref * j_dot * g.value, pref * j.value * g.d_space};
}

ModeJet mode_I_plus(const ModeSpec& spec, NuaPoint p, const SpecfunOptions& opts) {
  spec.validate();
  const double nu = spec.nu();
  const double pref = 0.5 * std::sqrt(-std::expm1(-2.0 * kPi * nu)) * std::sqrt(nu / (kPi * spec.w));
  const double z = scaled_exp(spec.m, spec.w, -spec.w * p.T);
  const HankelResult h = hankel1_imag_full(nu, z, opts);
  const SpatialFactor g = spatial_factor(spec, p.X, opts);
  const Complex h_dot = -spec.w * z * h.deriv;
  return {pref * h.value * g.value, pref * h_dot * g.value, pref * h.value * g.d_space};
}

ModeJet minkowski_mode(const ModeSpec& spec, MinkowskiPoint p, Frequency sign) {
  const double eps = spec.epsilon();
  if (!(eps > 0.0)) throw DomainError("minkowski_mode: epsilon must be positive");
  const double s = sign == Frequency::positive ? 1.0 : -1.0;
  const double phase = -s * (eps * p.t - spec.k * p.x);
  const Complex value = 0.5 / std::sqrt(kPi * eps) * std::polar(1.0, phase);
  const Complex i(0.0, 1.0);
  return {value, -s * i * eps * value, s * i * spec.k * value};
}

double mode_pair_normalization(double nu, double w) {
  return 1.0 / (w * std::sqrt(-std::expm1(-2.0 * kPi * nu)));
}

}  // namespace nua
