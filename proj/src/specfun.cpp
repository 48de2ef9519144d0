#include "nua/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nua/errors.hpp"

namespace nua {

namespace {

using LD = long double;
using ComplexLD = std::complex<LD>;

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr LD kEpsLD = std::numeric_limits<LD>::epsilon();

// Below this order the Hankel connection formula is 0/0.
constexpr double kSmallNu = 1e-6;
constexpr double kMacdonaldSeriesMax = 2.0;

void require_positive_argument(double z, const char* what) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " +
                      std::to_string(z));
  }
}

void require_order(double nu, const char* what) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw DomainError(std::string(what) + ": order nu must be finite and >= 0, got " +
                      std::to_string(nu));
  }
}

// ---------------------------------------------------------------------------
// Power series
//
// J_mu(z) = (z/2)^mu / Gamma(1+mu) * sum_k s_k,
//   s_k = s_{k-1} * (-z^2/4) / (k (k + mu)),
// J'_mu(z) = (z/2)^mu / Gamma(1+mu) / z * sum_k (2k + mu) s_k.

struct SeriesJ {
  ComplexLD value;
  ComplexLD deriv;
  LD error;
  // Error confined to the imaginary parts. Every imaginary contribution is
  // odd in nu, so this one shrinks with nu while `error` does not.
  LD error_imag;
};

// J_{i nu}(z), or I_{i nu}(z) when `modified` is set (no alternating sign).
SeriesJ j_series(double nu, double z, int work_factor, bool modified = false) {
  const ComplexLD mu(0.0L, nu);
  const Complex lg = log_gamma_complex(Complex(1.0, nu));
  const LD log_half_z = std::log(static_cast<LD>(z) / 2.0L);
  const ComplexLD lead = std::exp(mu * log_half_z - ComplexLD(lg.real(), lg.imag()));

  const LD step = (modified ? 1.0L : -1.0L) * static_cast<LD>(z) * static_cast<LD>(z) / 4.0L;
  CompensatedSum<ComplexLD> sum;
  CompensatedSum<ComplexLD> dsum;
  ComplexLD term = 1.0L;
  LD rounding = 0.0L;
  LD rounding_d = 0.0L;
  LD rounding_im = 0.0L;
  LD rounding_im_d = 0.0L;
  LD last = 0.0L;

  const int min_terms = static_cast<int>(z) + 2;
  const int cap = 4000 * work_factor;
  int stop_at = -1;
  for (int k = 0; k < cap; ++k) {
    if (k > 0) {
      term *= step / (static_cast<LD>(k) * (ComplexLD(static_cast<LD>(k), 0.0L) + mu));
    }
    sum.add(term);
    dsum.add(term * (ComplexLD(2.0L * k, 0.0L) + mu));
    const LD mag = std::abs(term);
    rounding += mag * static_cast<LD>(3 * k + 4);
    rounding_d += mag * static_cast<LD>(3 * k + 4) * std::abs(ComplexLD(2.0L * k, nu));
    // Im of the running product is O(nu), and so is its rounding.
    const LD mag_im = mag * std::min(1.0L, std::abs(static_cast<LD>(nu)) * static_cast<LD>(k + 1));
    rounding_im += mag_im * static_cast<LD>(3 * k + 4);
    rounding_im_d += mag_im * static_cast<LD>(3 * k + 4) * std::abs(ComplexLD(2.0L * k, nu));
    last = mag;
    if (stop_at < 0 && k >= min_terms && mag <= kEpsLD * std::abs(sum.value())) {
      stop_at = k + (work_factor - 1) * (k + 1);
    }
    if (stop_at >= 0 && k >= stop_at) break;
  }

  SeriesJ out;
  out.value = lead * sum.value();
  out.deriv = lead * dsum.value() / static_cast<LD>(z);
  const LD lead_mag = std::abs(lead);
  // Rounding of the terms, the truncated tail, and the double-precision lead.
  const LD lead_rel = static_cast<LD>(kEps) *
                      (4.0L + std::abs(ComplexLD(lg.real(), lg.imag())) + std::abs(nu) * std::abs(log_half_z));
  out.error = lead_mag * (kEpsLD * (rounding + rounding_d / static_cast<LD>(z)) + 2.0L * last) +
              lead_rel * (std::abs(out.value) + std::abs(out.deriv));
  const LD lead_rel_im = static_cast<LD>(kEps) * std::abs(ComplexLD(lg.real(), lg.imag())) +
                         kEpsLD * (1.0L + std::abs(nu) * std::abs(log_half_z));
  out.error_imag = lead_mag * (kEpsLD * (rounding_im + rounding_im_d / static_cast<LD>(z)) + 2.0L * last) +
                   lead_rel_im * (std::abs(out.value) + std::abs(out.deriv)) * std::min(1.0L, 4.0L * std::abs(nu));
  return out;
}

// ---------------------------------------------------------------------------
// Hankel asymptotic expansion for order mu with mu^2 real
// (mu = i nu gives mu^2 = -nu^2; mu = 0, 1 cover the Neumann functions).
//
// H1_mu(z)  ~ sqrt(2/(pi z)) e^{i omega}  sum i^k a_k / z^k
// H1'_mu(z) ~ i sqrt(2/(pi z)) e^{i omega} sum i^k b_k / z^k
// omega = z - mu pi/2 - pi/4, H2 by i -> -i.
// a_k = a_{k-1} (4mu^2 - (2k-1)^2) / (8k), b_k = a_{k-1} (4mu^2 + 4k^2 - 1) / (8k).

struct AsymptoticH {
  Complex h1, dh1, h2, dh2;
  double error;  // absolute, relative to the envelope of the larger of H1/H2
};

AsymptoticH hankel_asymptotic(double mu2, Complex phase_minus, Complex phase_plus, double z) {
  // phase_minus = e^{-i mu pi/2}, phase_plus = e^{+i mu pi/2}
  CompensatedSum<Complex> p;
  CompensatedSum<Complex> d;
  p.add(1.0);
  d.add(1.0);
  double a_prev = 1.0;  // a_{k-1} / z^{k-1}
  double smallest = 1.0;
  double trunc = 0.0;
  const Complex i_unit(0.0, 1.0);
  Complex ipow = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double a_k = a_prev * (4.0 * mu2 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
    const double b_k = a_prev * (4.0 * mu2 + 4.0 * k * k - 1.0) / (8.0 * k * z);
    const double mag = std::max(std::abs(a_k), std::abs(b_k));
    if (mag > smallest && k > 2) {
      // Divergent tail: truncate before the terms start to grow.
      trunc = smallest;
      break;
    }
    ipow *= i_unit;
    p.add(ipow * a_k);
    d.add(ipow * b_k);
    smallest = std::min(smallest, mag);
    a_prev = a_k;
    if (mag < 0.25 * kEps) {
      trunc = mag;
      break;
    }
    trunc = mag;
  }
  const double pref = std::sqrt(2.0 / (kPi * z));
  const Complex quarter = std::polar(1.0, -kPi / 4.0);
  const Complex e_plus = std::polar(1.0, z) * quarter * phase_minus;
  const Complex e_minus = std::polar(1.0, -z) * std::conj(quarter) * phase_plus;
  const Complex ps = p.value();
  const Complex ds = d.value();
  // sum (-i)^k c_k with real c_k is the conjugate of sum i^k c_k.
  AsymptoticH out;
  out.h1 = pref * e_plus * ps;
  out.dh1 = i_unit * pref * e_plus * ds;
  out.h2 = pref * e_minus * std::conj(ps);
  out.dh2 = -i_unit * pref * e_minus * std::conj(ds);
  const double envelope = pref * std::max(std::abs(e_plus), std::abs(e_minus));
  out.error = envelope * (2.0 * trunc + 16.0 * kEps);
  return out;
}

AsymptoticH hankel_asymptotic_imag(double nu, double z) {
  const double half = std::exp(kPi * nu / 2.0);
  return hankel_asymptotic(-nu * nu, Complex(half, 0.0), Complex(1.0 / half, 0.0), z);
}

double scale_of(Complex a, Complex b) { return std::hypot(std::abs(a), std::abs(b)); }

[[noreturn]] void precision_failure(const char* what, double nu, double z, double err,
                                    double scale) {
  throw PrecisionError(std::string(what) + ": error estimate " + std::to_string(err) +
                       " exceeds tolerance at nu=" + std::to_string(nu) +
                       ", z=" + std::to_string(z) + " (scale " + std::to_string(scale) + ")");
}

// Neumann functions Y0, Y1 by their logarithmic series.
struct SeriesY {
  LD y0, y1, error;
};

SeriesY y_series(double z, int work_factor) {
  const SeriesJ j0 = j_series(0.0, z, work_factor);
  const LD J0 = j0.value.real();
  const LD J1 = -j0.deriv.real();
  const LD zl = z;
  const LD log_term = std::log(zl / 2.0L);
  const LD q = zl * zl / 4.0L;
  const LD gamma = kEulerGamma;

  // Y0: sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
  // Y1: sum_{k>=0} (psi(k+1) + psi(k+2)) (-q)^k (z/2) / (k! (k+1)!)
  CompensatedSum<LD> s0;
  CompensatedSum<LD> s1;
  LD t = 1.0L;  // (-q)^k / (k!)^2
  LD harmonic = 0.0L;
  LD abs_sum = 0.0L;
  const int min_terms = static_cast<int>(z) + 2;
  int stop_at = -1;
  for (int k = 0; k < 4000 * work_factor; ++k) {
    if (k > 0) {
      t *= -q / (static_cast<LD>(k) * k);
      harmonic += 1.0L / k;
      s0.add(-t * harmonic);
    }
    const LD psi_sum = -2.0L * gamma + 2.0L * harmonic + 1.0L / (k + 1);
    const LD y1_term = psi_sum * t / (k + 1) * (zl / 2.0L);
    s1.add(y1_term);
    const LD mag = std::abs(t) * (1.0L + harmonic);
    abs_sum += mag * (k + 2);
    if (stop_at < 0 && k >= min_terms && mag <= kEpsLD * (std::abs(s0.value()) + 1e-300L)) {
      stop_at = k + (work_factor - 1) * (k + 1);
    }
    if (stop_at >= 0 && k >= stop_at) break;
  }
  SeriesY out;
  out.y0 = (2.0L / std::numbers::pi_v<LD>) * ((log_term + gamma) * J0 + s0.value());
  out.y1 = -2.0L / (std::numbers::pi_v<LD> * zl) +
           (2.0L / std::numbers::pi_v<LD>) * log_term * J1 - s1.value() / std::numbers::pi_v<LD>;
  out.error = kEpsLD * abs_sum * (2.0L + std::abs(log_term)) +
              static_cast<LD>(j0.error) * (1.0L + std::abs(log_term));
  return out;
}

// ln Gamma(1 + x) - x (1 - gamma) + log1p(x) = sum_{k>=2} (-1)^k (zeta(k) - 1) x^k / k,
// convergent for |x| < 2. Used near a = 1, 2 where the shifted Stirling sum
// loses absolute accuracy to cancellation.
ComplexLD zeta_tail_series(ComplexLD x) {
  static const std::array<LD, 64> kZetaMinusOne = [] {
    // zeta(k) - 1 for k = 2..19; direct sums beyond that.
    constexpr std::array<LD, 18> low = {
        0.644934066848226436472L,       0.2020569031595942854L,         0.082323233711138191516L,
        0.0369277551433699263314L,      0.0173430619844491397145L,      0.0083492773819228268398L,
        0.00407735619794433937869L,     0.00200839282608221441785L,     0.000994575127818085337146L,
        0.000494188604119464558702L,    0.000246086553308048298638L,    0.000122713347578489146752L,
        0.0000612481350587048292585L,   0.0000305882363070204935517L,   0.0000152822594086518717326L,
        0.0000076371976378997622736L,   0.00000381729326499983985646L,  0.00000190821271655393892566L};
    std::array<LD, 64> t{};
    for (int k = 2; k < 64; ++k) {
      if (k - 2 < static_cast<int>(low.size())) {
        t[k] = low[k - 2];
      } else {
        for (int n = 12; n >= 2; --n) t[k] += std::pow(static_cast<LD>(n), -static_cast<LD>(k));
      }
    }
    return t;
  }();
  CompensatedSum<ComplexLD> sum;
  ComplexLD xk = -x;
  for (int k = 2; k < 64; ++k) {
    xk *= -x;
    const ComplexLD term = xk * (kZetaMinusOne[k] / static_cast<LD>(k));
    sum.add(term);
    if (std::abs(term) <= kEpsLD * std::abs(sum.value())) break;
  }
  return sum.value();
}

ComplexLD log1p_complex(ComplexLD x) {
  const LD re = 0.5L * std::log1p(2.0L * x.real() + std::norm(x));
  return {re, std::atan2(x.imag(), 1.0L + x.real())};
}

}  // namespace

Complex log_gamma_complex(Complex a) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw DomainError("log_gamma_complex: non-finite argument");
  }
  if (a.real() <= 0.0) {
    const double nearest = std::round(a.real());
    const double tol = kEps * std::max(1.0, std::abs(a.real()));
    if (std::abs(a.imag()) <= tol && std::abs(a.real() - nearest) <= tol) {
      throw PoleError("log_gamma_complex: pole at non-positive integer " + std::to_string(nearest));
    }
  }

  constexpr LD kEulerGamma = 0.577215664901532860606512090082402431L;
  for (int base : {1, 2}) {
    const ComplexLD x(a.real() - base, a.imag());
    if (std::abs(x) <= 0.6L) {
      ComplexLD r = x * (1.0L - kEulerGamma) + zeta_tail_series(x);
      if (base == 1) r -= log1p_complex(x);
      return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
    }
  }

  // Shift up until the Stirling series is accurate to double precision,
  // subtracting log(a + j) along the way (keeps the continuous branch).
  CompensatedSum<Complex> shift;
  Complex w = a;
  while (w.real() < 15.0) {
    shift.add(std::log(w));
    w += 1.0;
  }

  // B_{2k} / (2k (2k-1))
  static constexpr std::array<double, 8> kStirling = {
      1.0 / 12.0,         -1.0 / 360.0,          1.0 / 1260.0,     -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0,     1.0 / 156.0,      -3617.0 / 122400.0};
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex corr = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) {
    corr = corr * inv2 + *it;
  }
  corr *= inv;
  const Complex stirling =
      (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + corr;
  return stirling - shift.value();
}

BesselJResult bessel_j_imag_full(double nu, double z, const SpecfunOptions& opts) {
  if (!std::isfinite(nu)) throw DomainError("bessel_j_imag: non-finite order");
  require_positive_argument(z, "bessel_j_imag");
  const int wf = std::max(1, opts.work_factor);

  auto from_series = [&]() {
    const SeriesJ s = j_series(nu, z, wf);
    BesselJResult r;
    r.value = Complex(static_cast<double>(s.value.real()), static_cast<double>(s.value.imag()));
    r.deriv = Complex(static_cast<double>(s.deriv.real()), static_cast<double>(s.deriv.imag()));
    r.error = static_cast<double>(s.error) + kEps * scale_of(r.value, r.deriv);
    r.asymptotic = false;
    return r;
  };
  auto from_asymptotic = [&]() {
    const AsymptoticH h = hankel_asymptotic_imag(nu, z);
    BesselJResult r;
    r.value = 0.5 * (h.h1 + h.h2);
    r.deriv = 0.5 * (h.dh1 + h.dh2);
    r.error = h.error;
    r.asymptotic = true;
    return r;
  };
  auto ok = [&](const BesselJResult& r) {
    return r.error <= opts.rel_tol * scale_of(r.value, r.deriv);
  };

  BesselJResult primary = z <= opts.z_switch ? from_series() : from_asymptotic();
  if (ok(primary)) return primary;
  // The other backend may still be good enough near the switch point.
  if (z > 2.0) {
    BesselJResult fallback = z <= opts.z_switch ? from_asymptotic() : from_series();
    if (ok(fallback)) return fallback;
    if (fallback.error < primary.error) primary = fallback;
  }
  precision_failure("bessel_j_imag", nu, z, primary.error, scale_of(primary.value, primary.deriv));
}

Complex bessel_j_imag(double nu, double z, const SpecfunOptions& opts) {
  return bessel_j_imag_full(nu, z, opts).value;
}

Complex bessel_j_imag_deriv(double nu, double z, const SpecfunOptions& opts) {
  return bessel_j_imag_full(nu, z, opts).deriv;
}

double bessel_y0(double z, const SpecfunOptions& opts) {
  require_positive_argument(z, "bessel_y0");
  if (z > opts.z_switch) {
    return hankel_asymptotic(0.0, 1.0, 1.0, z).h1.imag();
  }
  const SeriesY y = y_series(z, std::max(1, opts.work_factor));
  return static_cast<double>(y.y0);
}

double bessel_y1(double z, const SpecfunOptions& opts) {
  require_positive_argument(z, "bessel_y1");
  if (z > opts.z_switch) {
    return hankel_asymptotic(1.0, Complex(0.0, -1.0), Complex(0.0, 1.0), z).h1.imag();
  }
  const SeriesY y = y_series(z, std::max(1, opts.work_factor));
  return static_cast<double>(y.y1);
}

HankelResult hankel1_imag_full(double nu, double z, const SpecfunOptions& opts) {
  require_order(nu, "hankel1_imag");
  require_positive_argument(z, "hankel1_imag");
  const int wf = std::max(1, opts.work_factor);

  HankelResult out;
  if (z > opts.z_switch) {
    const AsymptoticH h = hankel_asymptotic_imag(nu, z);
    out.value = h.h1;
    out.deriv = h.dh1;
    out.error = h.error;
  } else if (nu < kSmallNu) {
    // d/dmu H1_mu at mu = 0 is -i pi/2 H1_0, so H1_{i nu} = H1_0 (1 + pi nu/2) + O(nu^2).
    const SeriesJ j0 = j_series(0.0, z, wf);
    const SeriesY y = y_series(z, wf);
    const double factor = 1.0 + kPi * nu / 2.0;
    out.value = factor * Complex(static_cast<double>(j0.value.real()), static_cast<double>(y.y0));
    out.deriv = factor * Complex(static_cast<double>(j0.deriv.real()), -static_cast<double>(y.y1));
    out.error = static_cast<double>(j0.error + y.error) +
                (nu * nu * 10.0 + kEps) * scale_of(out.value, out.deriv);
  } else {
    const SeriesJ j = j_series(nu, z, wf);
    const LD e_pi = std::exp(std::numbers::pi_v<LD> * nu);
    const LD sh = std::sinh(std::numbers::pi_v<LD> * nu);
    const ComplexLD h = (e_pi * j.value - std::conj(j.value)) / sh;
    const ComplexLD dh = (e_pi * j.deriv - std::conj(j.deriv)) / sh;
    out.value = Complex(static_cast<double>(h.real()), static_cast<double>(h.imag()));
    out.deriv = Complex(static_cast<double>(dh.real()), static_cast<double>(dh.imag()));
    // Re J enters with weight (e^{pi nu} - 1)/sinh ~ 1, Im J with (e^{pi nu} + 1)/sinh ~ 2/(pi nu).
    out.error = static_cast<double>(j.error * (e_pi - 1.0L) / sh + j.error_imag * (e_pi + 1.0L) / sh) +
                kEps * scale_of(out.value, out.deriv);
  }
  if (!(out.error <= opts.rel_tol * scale_of(out.value, out.deriv))) {
    precision_failure("hankel1_imag", nu, z, out.error, scale_of(out.value, out.deriv));
  }
  return out;
}

Complex hankel1_imag(double nu, double z, const SpecfunOptions& opts) {
  return hankel1_imag_full(nu, z, opts).value;
}

MacdonaldResult macdonald_k_imag_full(double nu, double x, const SpecfunOptions& opts) {
  require_positive_argument(x, "macdonald_k_imag");
  if (!std::isfinite(nu)) throw DomainError("macdonald_k_imag: non-finite order");
  nu = std::abs(nu);  // K_{i nu} is even in nu

  // e^{-x} below the smallest normal double: legitimately zero.
  if (x > 700.0) return {0.0, 0.0, true};

  // Small x: K_{i nu} = -pi Im I_{i nu} / sinh(pi nu). The I series has no
  // cancellation there, and the quadrature's t-range grows like log(1/x).
  if (x <= kMacdonaldSeriesMax && nu >= kSmallNu) {
    const SeriesJ s = j_series(nu, x, std::max(1, opts.work_factor), true);
    const LD factor = -std::numbers::pi_v<LD> / std::sinh(std::numbers::pi_v<LD> * nu);
    const double value = static_cast<double>(factor * s.value.imag());
    const double deriv = static_cast<double>(factor * s.deriv.imag());
    const double error = static_cast<double>(std::abs(factor) * s.error_imag) +
                         kEps * (std::abs(value) + std::abs(deriv));
    if (error <= opts.rel_tol * std::hypot(value, deriv)) return {value, deriv, false};
  }

  // Cut the t-range where exp(-x cosh t) < 1e-18 of its peak exp(-x).
  const double t_max = std::acosh(1.0 + 41.5 / x);
  const int wf = std::max(1, opts.work_factor);

  auto integrand = [&](double t, double& f, double& df, double& mag) {
    const double c = std::cosh(t);
    const double e = std::exp(-x * c);
    const double cs = std::cos(nu * t);
    f = e * cs;
    df = -c * e * cs;
    mag = e;
  };

  // Trapezoid rule in t. The integrand is even and analytic in
  // |Im t| < pi/2 with double-exponential decay, so halving h roughly
  // squares the error.
  double h = 0.5;
  CompensatedSum<double> f_sum;
  CompensatedSum<double> df_sum;
  CompensatedSum<double> mag_sum;
  {
    double f, df, mag;
    integrand(0.0, f, df, mag);
    f_sum.add(0.5 * f);
    df_sum.add(0.5 * df);
    mag_sum.add(0.5 * mag);
    const int n = static_cast<int>(std::ceil(t_max / h));
    for (int j = 1; j <= n; ++j) {
      integrand(j * h, f, df, mag);
      f_sum.add(f);
      df_sum.add(df);
      mag_sum.add(mag);
    }
  }
  double value = h * f_sum.value();
  double deriv = h * df_sum.value();
  double delta = std::numeric_limits<double>::infinity();
  // After convergence, work_factor > 1 buys extra halvings.
  const int extra_levels = wf > 1 ? static_cast<int>(std::ceil(std::log2(static_cast<double>(wf)))) : 0;
  int converged_levels = -1;
  while (h > 1e-5) {
    const int n = static_cast<int>(std::ceil(t_max / h));
    for (int j = 0; j < n; ++j) {
      double f, df, mag;
      integrand((j + 0.5) * h, f, df, mag);
      f_sum.add(f);
      df_sum.add(df);
      mag_sum.add(mag);
    }
    h *= 0.5;
    const double next = h * f_sum.value();
    const double next_d = h * df_sum.value();
    delta = std::max(std::abs(next - value), std::abs(next_d - deriv) * x);
    value = next;
    deriv = next_d;
    if (converged_levels >= 0) {
      ++converged_levels;
    } else if (delta <= 0.1 * opts.rel_tol * h * mag_sum.value()) {
      converged_levels = 0;
    }
    if (converged_levels >= extra_levels) break;
  }
  const double scale = h * mag_sum.value();
  if (!(delta <= opts.rel_tol * scale)) {
    precision_failure("macdonald_k_imag", nu, x, delta, scale);
  }
  return {value, deriv, false};
}

double macdonald_k_imag(double nu, double x, const SpecfunOptions& opts) {
  return macdonald_k_imag_full(nu, x, opts).value;
}

}  // namespace nua
