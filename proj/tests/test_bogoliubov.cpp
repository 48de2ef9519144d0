#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "nua/bogoliubov.hpp"
#include "oracles/ode_oracle.hpp"

using nua::Complex;
using nua::ModeSpec;

namespace {

constexpr double pi = std::numbers::pi;

struct Scenario {
  double K, w;
};
// The four default scenarios: nu = 0.1, 0.3, 0.02, 0.06.
constexpr Scenario kScenarios[] = {{0.1, 1.0}, {0.3, 1.0}, {0.1, 5.0}, {0.3, 5.0}};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

struct Reconstructed {
  Complex F;
  Complex dF;
};

Reconstructed reconstruct(const ModeSpec& spec, const nua::FrequencyMatchCoeffs& c, double T) {
  const double z = spec.m / spec.w * std::exp(-spec.w * T);
  const auto j = nua::bessel_j_imag_full(spec.nu(), z);
  const Complex j_dot = -spec.w * z * j.deriv;
  return {c.c_plus * j.value + c.c_minus * std::conj(j.value), c.c_plus * j_dot + c.c_minus * std::conj(j_dot)};
}

}  // namespace

TEST_CASE("frequency_match: instantaneous positive frequency at T0") {
  const ModeSpec spec{1.0, 1.0, 0.3};
  const auto c = nua::frequency_match(spec, 0.0);
  const Reconstructed r = reconstruct(spec, c, 0.0);
  CHECK(std::abs(r.dF + Complex(0.0, c.W) * r.F) < 1e-9 * std::abs(r.F));
  CHECK(c.W == doctest::Approx(std::sqrt(1.0 + 0.09)).epsilon(1e-15));
  CHECK(c.W > spec.K);
  // The prefactor normalizes F(T0) to W^{-1/2}.
  CHECK(std::abs(r.F - 1.0 / std::sqrt(c.W)) < 1e-10);
}

TEST_CASE("frequency_match: positive frequency over random draws") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_m(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> log_w(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> log_nu(std::log(0.01), std::log(2.0));
  std::uniform_real_distribution<double> log_z(std::log(1e-8), std::log(200.0));
  for (int draw = 0; draw < 200; ++draw) {
    const double m = std::exp(log_m(rng));
    const double w = std::exp(log_w(rng));
    const double nu = std::exp(log_nu(rng));
    const double z = std::exp(log_z(rng));
    const double T0 = -std::log(z * w / m) / w;
    const ModeSpec spec{m, w, nu * w};
    const auto c = nua::frequency_match(spec, T0);
    const Reconstructed r = reconstruct(spec, c, T0);
    CAPTURE(m);
    CAPTURE(w);
    CAPTURE(nu);
    CAPTURE(z);
    CHECK(std::abs(r.dF + Complex(0.0, c.W) * r.F) < 1e-9 * std::abs(r.F));
  }
}

TEST_CASE("frequency_match: c- vanishes at late times") {
  const ModeSpec spec{1.0, 1.0, 0.1};
  const auto c = nua::frequency_match(spec, 10.0);
  CHECK(std::abs(c.c_minus / c.c_plus) < 1e-3);
}

TEST_CASE("frequency_match: small nu is rejected") {
  CHECK_THROWS_AS(nua::frequency_match(ModeSpec{1.0, 1.0, 1e-7}, 0.0), nua::SmallNuError);
  CHECK_THROWS_AS(nua::frequency_match(ModeSpec{1.0, 0.0, 0.3}, 0.0), nua::ValidationError);
}

TEST_CASE("frequency_match: Bessel reconstruction agrees with direct integration") {
  for (const auto& sc : kScenarios) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    for (double T0 : {-1.0, 0.0, 2.0, 6.0}) {
      const auto c = nua::frequency_match(spec, T0);
      const Reconstructed start = reconstruct(spec, c, T0);
      for (double T : linspace(T0 - 2.0, T0 + 2.0, 9)) {
        if (T == T0) continue;
        const auto ode = oracle::integrate_mode(spec, T0, {start.F, start.dF}, T);
        const Reconstructed bessel = reconstruct(spec, c, T);
        CAPTURE(sc.K);
        CAPTURE(sc.w);
        CAPTURE(T0);
        CAPTURE(T);
        CHECK(std::abs(ode.F - bessel.F) < 1e-6 * std::abs(bessel.F));
        CHECK(std::abs(ode.dF - bessel.dF) < 1e-6 * std::abs(bessel.dF));
      }
    }
  }
}

TEST_CASE("a_coefficient: companions and the two gamma paths") {
  for (double nu : {0.02, 0.1, 0.3, 1.0, 3.0}) {
    for (double k : {-2.0, 0.0, 0.5, 2.0}) {
      const ModeSpec spec{1.0, 1.0, nu, k};
      const Complex A = nua::a_coefficient(spec);
      const Complex A_id = nua::a_coefficient(spec, nua::GammaPath::reflection_identity);
      const Complex B = nua::b_coefficient(spec);
      CAPTURE(nu);
      CAPTURE(k);
      CHECK(std::abs(A - A_id) < 1e-10 * std::abs(A));
      CHECK(std::abs(B) / std::abs(A) == doctest::Approx(std::exp(-pi * nu)).epsilon(1e-14));
      const double eps = spec.epsilon();
      const double mod2 = (nu / (eps * spec.w)) * std::exp(pi * nu) * std::sinh(pi * nu) /
                          (4.0 * pi * nu * std::sinh(pi * nu) * std::sinh(pi * nu));
      CHECK(std::norm(A) == doctest::Approx(mod2).epsilon(1e-12));
    }
  }
  CHECK(nua::c_constant(ModeSpec{1.0, 2.0, 0.6}) == doctest::Approx(std::sqrt(pi * 2.0 / 0.3)).epsilon(1e-15));
  CHECK_THROWS_AS(nua::a_coefficient(ModeSpec{1.0, 1.0, 1e-8}), nua::SmallNuError);
}

TEST_CASE("alpha_beta: conj(beta)/alpha reproduces q where A is real") {
  for (const auto& sc : kScenarios) {
    for (double T0 : {-3.0, 0.0, 1.5, 5.0}) {
      ModeSpec spec{1.0, sc.w, sc.K};
      const auto c = nua::frequency_match(spec, T0);
      const Complex q = nua::q_from_coefficients(c.c_plus, c.c_minus, spec.nu());
      int tested = 0;
      for (int j = -3; j <= 3 && tested < 3; ++j) {
        double k = 0.0;
        try {
          k = nua::real_a_wavenumber(spec, j);
        } catch (const nua::DomainError&) {
          continue;
        }
        if (!std::isfinite(k)) continue;
        spec.k = k;
        CHECK(std::abs(nua::a_coefficient(spec).imag()) < 1e-12 * std::abs(nua::a_coefficient(spec)));
        const auto ab = nua::alpha_beta(spec, c);
        CAPTURE(sc.K);
        CAPTURE(sc.w);
        CAPTURE(T0);
        CAPTURE(k);
        CHECK(std::abs(std::conj(ab.beta) / ab.alpha - q) < 1e-10);
        CHECK(std::abs(ab.beta / ab.alpha) < 1.0);
        ++tested;
      }
      CHECK(tested == 3);
    }
  }
}

TEST_CASE("alpha_beta: |beta/alpha| depends on k through the phase of A") {
  // beta/alpha = (c+ e^{2 i phi} s + c-) / (c+ e^{2 i phi} + c- s) with phi = arg A,
  // so the modulus moves with k whenever c- is not negligible.
  const ModeSpec base{1.0, 1.0, 0.3};
  const auto c = nua::frequency_match(base, -0.5);
  ModeSpec s1 = base;
  ModeSpec s2 = base;
  s1.k = 0.5;
  s2.k = 2.0;
  const auto r1 = nua::alpha_beta(s1, c);
  const auto r2 = nua::alpha_beta(s2, c);
  CHECK(std::abs(std::abs(r1.beta / r1.alpha) - std::abs(r2.beta / r2.alpha)) > 1e-3);
  // Late times: c- -> 0 and both tend to the thermal ratio.
  const auto late = nua::frequency_match(base, 10.0);
  for (double k : {0.5, 2.0}) {
    ModeSpec s = base;
    s.k = k;
    const auto r = nua::alpha_beta(s, late);
    CHECK(std::abs(std::abs(r.beta / r.alpha) - std::exp(-0.3 * pi)) < 1e-3);
  }
}

TEST_CASE("squeezing_q: reference limits") {
  CHECK(std::abs(nua::squeezing_q(ModeSpec{1.0, 1.0, 0.1}, -8.0).q) < 0.02);
  CHECK(std::abs(std::abs(nua::squeezing_q(ModeSpec{1.0, 1.0, 0.1}, 10.0).q) - 0.73040) < 1e-3);
  CHECK(std::abs(std::abs(nua::squeezing_q(ModeSpec{1.0, 5.0, 0.1}, 10.0).q) - 0.93910) < 1e-3);
  for (const auto& sc : kScenarios) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    CAPTURE(sc.K);
    CAPTURE(sc.w);
    CHECK(std::abs(std::abs(nua::squeezing_q(spec, 10.0).q) - nua::asymptotic_q_magnitude(spec.nu())) < 1e-3);
    CHECK(std::abs(nua::squeezing_q(spec, -8.0).q) < 0.02);
  }
}

TEST_CASE("squeezing_q: |q| < 1 across the default grid, and depends on (nu, z) only") {
  for (const auto& sc : kScenarios) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    for (double T0 : linspace(-8.0, 10.0, 200)) {
      const double a = std::abs(nua::squeezing_q(spec, T0).q);
      CHECK(a < 1.0);
      CHECK(a >= 0.0);
    }
  }
  // Same nu and z from different (m, w, T0).
  const double nu = 0.2;
  const double z = 0.7;
  const double ref = std::abs(nua::squeezing_q(ModeSpec{1.0, 1.0, nu}, -std::log(z)).q);
  for (double m : {0.3, 2.0}) {
    for (double w : {0.5, 4.0}) {
      const double T0 = -std::log(z * w / m) / w;
      CHECK(std::abs(std::abs(nua::squeezing_q(ModeSpec{m, w, nu * w}, T0).q) - ref) < 1e-12);
    }
  }
}

TEST_CASE("squeezing_q: the alternate numerator sign leaves the unit disk at early times") {
  const ModeSpec spec{1.0, 1.0, 0.1};
  const auto c = nua::frequency_match(spec, -8.0);
  CHECK(std::abs(nua::q_alternate_sign(c.c_plus, c.c_minus, spec.nu())) > 1.0);
  CHECK(std::abs(nua::q_from_coefficients(c.c_plus, c.c_minus, spec.nu())) < 0.02);
}

TEST_CASE("squeezing_q: monotone for nu = 0.02 and 0.06") {
  for (const auto& sc : {kScenarios[2], kScenarios[3]}) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    double prev = -1.0;
    for (double T0 : linspace(-8.0, 10.0, 200)) {
      const double a = std::abs(nua::squeezing_q(spec, T0).q);
      CHECK(a >= prev - 1e-9);
      prev = a;
    }
  }
}

TEST_CASE("squeezing_q: overshoot above the plateau for nu = 0.1 and 0.3") {
  // |q| rises past e^{-pi nu} before settling onto it; the sampled curve is
  // therefore not monotone for these two scenarios.
  for (const auto& sc : {kScenarios[0], kScenarios[1]}) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    double peak = 0.0;
    for (double T0 : linspace(-8.0, 10.0, 200)) peak = std::max(peak, std::abs(nua::squeezing_q(spec, T0).q));
    CAPTURE(sc.K);
    CHECK(peak > nua::asymptotic_q_magnitude(spec.nu()));
  }
  const double peak_03 = std::abs(nua::squeezing_q(ModeSpec{1.0, 1.0, 0.3}, -std::log(0.09)).q);
  CHECK(peak_03 == doctest::Approx(0.39455).epsilon(1e-4));
}

TEST_CASE("squeezing_q: agrees with direct integration of the mode equation") {
  for (const auto& sc : kScenarios) {
    const ModeSpec spec{1.0, sc.w, sc.K};
    // T0 where z = (m/w) e^{-w T0} <= 200 keeps the oscillatory start cheap.
    const double t_lo = -std::log(200.0 * sc.w) / sc.w;
    for (double T0 : linspace(std::max(-8.0, t_lo), 10.0, 10)) {
      const double bessel = std::abs(nua::squeezing_q(spec, T0).q);
      const double ode = std::abs(oracle::q_by_integration(spec, T0));
      CAPTURE(sc.K);
      CAPTURE(sc.w);
      CAPTURE(T0);
      CHECK(std::abs(bessel - ode) < 1e-6);
    }
  }
}

TEST_CASE("asymptotic_q_magnitude") {
  CHECK(nua::asymptotic_q_magnitude(0.1) == doctest::Approx(0.730402).epsilon(1e-6));
  CHECK(nua::asymptotic_q_magnitude(50.0) < 1e-60);
  CHECK(nua::asymptotic_q_magnitude(1e-9) < 1.0);
  CHECK(nua::asymptotic_q_magnitude(1e-9) > 1.0 - 1e-8);
  CHECK_THROWS_AS(nua::asymptotic_q_magnitude(0.0), nua::DomainError);
}

TEST_CASE("squeezing_q: parallel evaluation is bit-identical") {
  const ModeSpec spec{1.0, 1.0, 0.3};
  const auto grid = linspace(-8.0, 10.0, 64);
  std::vector<Complex> serial(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) serial[i] = nua::squeezing_q(spec, grid[i]).q;
  std::vector<Complex> parallel(grid.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (size_t i = t; i < grid.size(); i += 4) parallel[i] = nua::squeezing_q(spec, grid[i]).q;
    });
  }
  for (auto& th : pool) th.join();
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].real() == parallel[i].real());
    CHECK(serial[i].imag() == parallel[i].imag());
  }
}
