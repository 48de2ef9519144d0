#pragma once

// Special functions of imaginary order and real positive argument:
// J_{i nu}(z), H^(1)_{i nu}(z), K_{i nu}(x), plus complex log-gamma.
//
// Everything here is pure and reentrant. Series are summed in long double
// with Neumaier compensation so the small-argument branch survives the
// cancellation that sets in around z ~ 10.

#include <complex>

namespace nua {

using Complex = std::complex<double>;

struct SpecfunOptions {
  // Relative tolerance checked against the internal error estimate.
  double rel_tol = 1e-10;
  // Power series below, Hankel asymptotic expansion above.
  double z_switch = 12.0;
  // Multiplies term and node budgets. Raising it must not move a returned
  // value by more than rel_tol; tests use this to audit the error estimates.
  int work_factor = 1;
};

// Neumaier-compensated accumulator. Deterministic in the order of add().
template <typename T>
class CompensatedSum {
 public:
  void add(const T& x) {
    const T t = sum_ + x;
    comp_ += compensation(sum_, x, t);
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  template <typename R>
  static R compensation(R s, R x, R t) {
    using std::abs;
    return abs(s) >= abs(x) ? (s - t) + x : (x - t) + s;
  }
  template <typename R>
  static std::complex<R> compensation(std::complex<R> s, std::complex<R> x, std::complex<R> t) {
    return {compensation(s.real(), x.real(), t.real()), compensation(s.imag(), x.imag(), t.imag())};
  }

  T sum_{};
  T comp_{};
};

// log Gamma(a), continuous branch obtained from the Stirling series plus
// upward recurrence (imaginary part is not reduced modulo 2 pi).
// Throws PoleError at non-positive integers.
Complex log_gamma_complex(Complex a);

struct BesselJResult {
  Complex value;   // J_{i nu}(z)
  Complex deriv;   // d/dz J_{i nu}(z)
  double error;    // absolute error estimate, valid for both entries
  bool asymptotic; // which backend produced it
};

// J_{i nu}(z) and its z-derivative for any real nu; bessel_j_imag(-nu, z)
// is J_{-i nu}(z), the complex conjugate of bessel_j_imag(nu, z).
// Tolerance is relative to hypot(|J|, |J'|), which never vanishes for nu > 0.
BesselJResult bessel_j_imag_full(double nu, double z, const SpecfunOptions& opts = {});
Complex bessel_j_imag(double nu, double z, const SpecfunOptions& opts = {});
Complex bessel_j_imag_deriv(double nu, double z, const SpecfunOptions& opts = {});

// Integer-order Neumann functions used by the nu -> 0 Hankel branch.
double bessel_y0(double z, const SpecfunOptions& opts = {});
double bessel_y1(double z, const SpecfunOptions& opts = {});

struct HankelResult {
  Complex value;
  Complex deriv;
  double error;
};

// H^(1)_{i nu}(z) = (e^{pi nu} J_{i nu} - J_{-i nu}) / sinh(pi nu); below
// nu = 1e-6 the 0/0 is replaced by (J0 + i Y0)(1 + pi nu / 2).
HankelResult hankel1_imag_full(double nu, double z, const SpecfunOptions& opts = {});
Complex hankel1_imag(double nu, double z, const SpecfunOptions& opts = {});

struct MacdonaldResult {
  double value;
  double deriv;
  bool underflow;  // e^{-x} underflowed; value and deriv are 0
};

// K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt, real for real x.
MacdonaldResult macdonald_k_imag_full(double nu, double x, const SpecfunOptions& opts = {});
double macdonald_k_imag(double nu, double x, const SpecfunOptions& opts = {});

}  // namespace nua
