#pragma once

// Bessel-free reference for the time-dependent mode equation
//   F'' + (m^2 e^{-2wT} + K^2) F = 0
// by adaptive Runge-Kutta. Used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <boost/numeric/odeint.hpp>

#include "nua/bogoliubov.hpp"

namespace oracle {

using Complex = std::complex<double>;
using State = std::array<double, 4>;  // Re F, Im F, Re F', Im F'

struct ModeState {
  Complex F;
  Complex dF;
};

inline ModeState integrate_mode(const nua::ModeSpec& spec, double T_from, ModeState start, double T_to,
                                double tol = 1e-13) {
  namespace odeint = boost::numeric::odeint;
  auto rhs = [&](const State& y, State& dy, double T) {
    const double omega2 = spec.m * spec.m * std::exp(-2.0 * spec.w * T) + spec.K * spec.K;
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = -omega2 * y[0];
    dy[3] = -omega2 * y[1];
  };
  State y{start.F.real(), start.F.imag(), start.dF.real(), start.dF.imag()};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());
  const double span = T_to - T_from;
  odeint::integrate_adaptive(stepper, rhs, y, T_from, T_to, span / 1000.0);
  return {{y[0], y[1]}, {y[2], y[3]}};
}

// Leading two terms of J_{+-i nu}(z) and d/dT at small z, z = (m/w) e^{-wT}.
inline ModeState small_z_bessel(double nu, double w, double z, int sign) {
  const Complex mu(0.0, sign * nu);
  const Complex inv_gamma = std::exp(-nua::log_gamma_complex(1.0 + mu));
  const Complex zmu = std::exp(mu * std::log(z / 2.0));
  const Complex corr = z * z / (4.0 * (1.0 + mu));
  const Complex value = inv_gamma * zmu * (1.0 - corr);
  // d/dT = -w z d/dz applied to z^mu (1 - z^2 / (4 (1 + mu))).
  const Complex d_time = -w * inv_gamma * zmu * (mu - (mu + 2.0) * corr);
  return {value, d_time};
}

// Integrates from (1, -iW) at T0 until z has fallen to z_end, then reads off
// c+- by matching to the small-z Bessel forms.
inline Complex q_by_integration(const nua::ModeSpec& spec, double T0, double z_end = 1e-7) {
  const double nu = spec.nu();
  const double z0 = spec.m / spec.w * std::exp(-spec.w * T0);
  const double W = spec.w * std::hypot(z0, nu);
  const double T_end = T0 + std::log(z0 / std::min(z_end, 1e-3 * z0)) / spec.w;
  const ModeState f = integrate_mode(spec, T0, {1.0, Complex(0.0, -W)}, T_end);
  const double z = spec.m / spec.w * std::exp(-spec.w * T_end);
  const ModeState jp = small_z_bessel(nu, spec.w, z, +1);
  const ModeState jm = small_z_bessel(nu, spec.w, z, -1);
  const Complex det = jp.F * jm.dF - jm.F * jp.dF;
  const Complex c_plus = (f.F * jm.dF - jm.F * f.dF) / det;
  const Complex c_minus = (jp.F * f.dF - f.F * jp.dF) / det;
  return nua::q_from_coefficients(c_plus, c_minus, nu);
}

}  // namespace oracle
