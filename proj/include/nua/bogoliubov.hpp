#pragma once

// Instantaneous positive-frequency matching on the slice T = T0, Bogoliubov
// coefficients against inertial plane waves, and the squeezing parameter q.
//
// F(T) = c+ J_{i nu}(z) + c- J_{-i nu}(z), z = (m/w) e^{-wT}, is fixed by
// dF/dT(T0) = -i W F(T0) with W = sqrt(m^2 e^{-2wT0} + K^2).

#include "nua/spacetime.hpp"
#include "nua/specfun.hpp"

namespace nua {

struct FrequencyMatchCoeffs {
  Complex c_plus;
  Complex c_minus;
  double W = 0.0;   // instantaneous frequency at T0
  double T0 = 0.0;
  double z = 0.0;   // (m/w) e^{-w T0}
};

// c+- = -+ i nu pi W^{1/2} / (2 K sinh(pi nu)) (dJ_{-+i nu}/dT / W + i J_{-+i nu}).
// With this prefactor F(T0) = W^{-1/2}.
// Throws SmallNuError for nu < 1e-6; propagates PrecisionError.
FrequencyMatchCoeffs frequency_match(const ModeSpec& spec, double T0, const SpecfunOptions& opts = {});

enum class GammaPath { direct, reflection_identity };

// A = -(nu/(eps w))^{1/2} e^{pi nu/2} / (2 Gamma(1+i nu) sinh(pi nu)) ((eps-k)/(2w))^{i nu}.
// The reflection path takes |Gamma(1+i nu)| from pi nu / sinh(pi nu) and only
// the phase from log-gamma. Throws SmallNuError for nu < 1e-6.
Complex a_coefficient(const ModeSpec& spec, GammaPath path = GammaPath::direct);
// B = -A e^{-pi nu}.
Complex b_coefficient(const ModeSpec& spec);
// C = sqrt(pi w / nu).
double c_constant(const ModeSpec& spec);

struct BogoliubovPair {
  Complex alpha;
  Complex beta;
  double k = 0.0;
};

// alpha = -C c+ A + C c- B*,  beta = C c+ B - C c- A*.
BogoliubovPair alpha_beta(const ModeSpec& spec, const FrequencyMatchCoeffs& coeffs);

// Wavenumbers at which A is real, so that conj(beta)/alpha reproduces q
// exactly: nu log((eps-k)/(2w)) - arg Gamma(1+i nu) = j pi.
double real_a_wavenumber(const ModeSpec& spec, int j);

struct SqueezingParam {
  Complex q;
  double T0 = 0.0;
  double nu = 0.0;
};

// q = (e^{-pi nu} conj(c+) + conj(c-)) / (c+ + e^{-pi nu} c-).
// |q| < 1 iff |c+| > |c-|; |q| depends on (nu, z) only.
Complex q_from_coefficients(Complex c_plus, Complex c_minus, double nu);
SqueezingParam squeezing_q(const ModeSpec& spec, double T0, const SpecfunOptions& opts = {});

// (e^{-pi nu} conj(c+) - conj(c-)) / (c+ + e^{-pi nu} c-). Exceeds 1 in
// modulus at early T0; kept for discrepancy reports only.
Complex q_alternate_sign(Complex c_plus, Complex c_minus, double nu);

// e^{-pi nu}: the uniform-acceleration limit of |q|.
double asymptotic_q_magnitude(double nu);

}  // namespace nua
