#pragma once

// Coordinates of the non-uniformly accelerated chart, its mode functions and
// the Klein-Gordon inner product on constant-time slices.
//
// Chart:  w(t + x) = 2 sinh(w(T + X)),  w(t - x) = -e^{-w(T - X)}
// Metric: ds^2 = (e^{-2wT} + e^{2wX}) (dT^2 - dX^2)

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

#include "nua/errors.hpp"
#include "nua/specfun.hpp"

namespace nua {

struct ModeSpec {
  double m = 1.0;  // mass
  double w = 1.0;  // acceleration scale
  double K = 0.1;  // separation constant
  double k = 0.0;  // inertial wavenumber, only read by the Bogoliubov layer

  double nu() const { return K / w; }
  double epsilon() const { return std::hypot(k, m); }
  // Throws ValidationError unless m, w, K are finite and positive.
  void validate() const;
};

struct NuaPoint {
  double T = 0.0;
  double X = 0.0;
};

struct MinkowskiPoint {
  double t = 0.0;
  double x = 0.0;
};

// Throws OverflowError when |w(T +- X)| leaves the exp-safe range.
MinkowskiPoint nua_to_minkowski(NuaPoint p, double w);
// Throws RegionError when t - x >= 0.
NuaPoint minkowski_to_nua(MinkowskiPoint p, double w);

// e^{-2wT} + e^{2wX}.
double conformal_factor(NuaPoint p, double w);

// Acceleration of the worldline X = X0: w e^{2wX0} (e^{-2wT} + e^{2wX0})^{-3/2}.
// Evaluated in log space, so it underflows to 0 as T -> -inf instead of
// overflowing.
double proper_acceleration(double T, double X0, double w);

// Value and first partial derivatives of a mode at one point.
struct ModeJet {
  Complex value;
  Complex d_time;   // d/dT (or d/dt for inertial modes)
  Complex d_space;  // d/dX (or d/dx)
};

// (nu/(pi w))^{1/2} J_{i nu}(T~) K_{i nu}(X~), T~ = (m/w)e^{-wT}, X~ = (m/w)e^{wX}.
ModeJet mode_R_plus(const ModeSpec& spec, NuaPoint p, const SpecfunOptions& opts = {});
// sqrt(1 - e^{-2 pi nu})/2 (nu/(pi w))^{1/2} H1_{i nu}(T~) K_{i nu}(X~).
ModeJet mode_I_plus(const ModeSpec& spec, NuaPoint p, const SpecfunOptions& opts = {});

enum class Frequency { positive, negative };

// (1/2)(pi eps)^{-1/2} exp(-+ i(eps t - k x)), eps = sqrt(k^2 + m^2).
ModeJet minkowski_mode(const ModeSpec& spec, MinkowskiPoint p, Frequency sign);

// Closed-form constant N(nu) in <R+_mu, I+_nu> = N(nu) delta(mu - nu):
// e^{pi nu} / (w sqrt(e^{2 pi nu} - 1)).
double mode_pair_normalization(double nu, double w);

// Residual of (d_T^2 - d_X^2 + m^2 Omega) Phi = 0 by fourth-order central
// differences of the analytic first derivatives, divided by the sum of the
// magnitudes of the three terms.
template <typename Field>
double kg_relative_residual(const Field& field, const ModeSpec& spec, NuaPoint p, double h) {
  auto d2 = [&](auto&& jet_at, auto&& pick) {
    return (pick(jet_at(-2.0)) - 8.0 * pick(jet_at(-1.0)) + 8.0 * pick(jet_at(1.0)) - pick(jet_at(2.0))) /
           (12.0 * h);
  };
  auto along_time = [&](double s) { return field(NuaPoint{p.T + s * h, p.X}); };
  auto along_space = [&](double s) { return field(NuaPoint{p.T, p.X + s * h}); };
  const Complex f_tt = d2(along_time, [](const ModeJet& j) { return j.d_time; });
  const Complex f_xx = d2(along_space, [](const ModeJet& j) { return j.d_space; });
  const Complex mass = spec.m * spec.m * conformal_factor(p, spec.w) * field(p).value;
  const double scale = std::abs(f_tt) + std::abs(f_xx) + std::abs(mass);
  return scale > 0.0 ? std::abs(f_tt - f_xx + mass) / scale : 0.0;
}

// A field and its time derivative on a uniform spatial grid of one
// constant-time slice: position_j = origin + j * spacing.
template <typename Scalar>
struct SampledField {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  double time = 0.0;
  double origin = 0.0;
  double spacing = 0.0;
  Vector value;
  Vector d_time;

  Eigen::Index size() const { return value.size(); }
  double position(Eigen::Index j) const { return origin + static_cast<double>(j) * spacing; }
};

using ComplexField = SampledField<Complex>;

// Samples `jet(time, position)` at n points starting from `origin`.
template <typename JetFn>
ComplexField sample_slice(const JetFn& jet, double time, double origin, double spacing, Eigen::Index n) {
  ComplexField f;
  f.time = time;
  f.origin = origin;
  f.spacing = spacing;
  f.value.resize(n);
  f.d_time.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const ModeJet v = jet(time, f.position(j));
    f.value[j] = v.value;
    f.d_time[j] = v.d_time;
  }
  return f;
}

// -i int dX (A d_T B* - B* d_T A) by composite Simpson on the shared grid.
// Requires an odd number (>= 3) of points and identical slices, otherwise
// ValidationError. Throws WindowError when |A| or |B| at either end exceeds
// boundary_tol times its peak.
template <typename Scalar>
Complex kg_inner_product(const SampledField<Scalar>& a, const SampledField<Scalar>& b,
                         double boundary_tol = 1e-8) {
  const Eigen::Index n = a.size();
  if (n < 3 || n % 2 == 0) throw ValidationError("kg_inner_product: Simpson needs an odd point count >= 3");
  if (b.size() != n || a.d_time.size() != n || b.d_time.size() != n || a.time != b.time ||
      a.origin != b.origin || a.spacing != b.spacing || !(a.spacing > 0.0)) {
    throw ValidationError("kg_inner_product: fields are not sampled on the same slice");
  }
  for (const auto* f : {&a, &b}) {
    const double peak = f->value.cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(f->value[0]), std::abs(f->value[n - 1]));
    if (edge > boundary_tol * peak) throw WindowError("kg_inner_product: field has not decayed at the window edge");
  }
  CompensatedSum<Complex> sum;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double weight = (j == 0 || j == n - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    const Complex b_conj = std::conj(Complex(b.value[j]));
    const Complex current = Complex(a.value[j]) * std::conj(Complex(b.d_time[j])) - b_conj * Complex(a.d_time[j]);
    sum.add(weight * current);
  }
  return Complex(0.0, -1.0) * sum.value() * (a.spacing / 3.0);
}

}  // namespace nua
