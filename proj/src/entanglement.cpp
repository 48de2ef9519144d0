#include "nua/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nua {

namespace {

constexpr int kMinNMax = 8;
constexpr int kMaxNMax = 512;
constexpr double kEntropyClip = -1e-10;

void require_q(double q_abs, const char* where) {
  if (!(q_abs >= 0.0 && q_abs < 1.0)) throw DomainError(std::string(where) + ": |q| must lie in [0, 1)");
}

void require_n_max(int n_max, const char* where) {
  if (n_max < 1) throw DomainError(std::string(where) + ": n_max must be >= 1");
}

// |q|^{2(n_max+1)}, the discarded weight of the two-mode expansion.
double discarded_weight(double s, int n_max) {
  return std::pow(s, n_max + 1);
}

void check_tail(double s, int n_max, double tail_tol, const char* where) {
  const double tail = discarded_weight(s, n_max);
  if (tail > tail_tol) {
    throw TruncationError(std::string(where) + ": |q|^{2(n_max+1)} = " + std::to_string(tail) +
                          " exceeds tail_tol");
  }
}

// Eigenvalues of [[a, b], [b, d]], the smaller one from the determinant.
std::pair<double, double> symmetric_2x2(double a, double b, double d) {
  const double hi = 0.5 * (a + d) + std::hypot(0.5 * (a - d), b);
  const double lo = hi > 0.0 ? (a * d - b * b) / hi : 0.0;
  return {hi, lo};
}

}  // namespace

int choose_n_max(double q_abs, double tail_tol) {
  require_q(q_abs, "choose_n_max");
  const double s = q_abs * q_abs;
  double tail = s;  // s^{n+1}
  for (int n = 0; n <= kMaxNMax; ++n, tail *= s) {
    if (tail < tail_tol) return std::max(n, kMinNMax);
  }
  throw TruncationError("choose_n_max: n_max = 512 does not reach tail_tol");
}

Eigen::VectorXd squeezed_vacuum_weights(double q_abs, int n_max, double tail_tol) {
  require_q(q_abs, "squeezed_vacuum_weights");
  require_n_max(n_max, "squeezed_vacuum_weights");
  const double s = q_abs * q_abs;
  check_tail(s, n_max, tail_tol, "squeezed_vacuum_weights");
  Eigen::VectorXd p(n_max + 1);
  double sn = 1.0;
  for (int n = 0; n <= n_max; ++n, sn *= s) p(n) = (1.0 - s) * sn;
  return p;
}

TruncatedDensityMatrix build_rho_av(double q_abs, int n_max, double tail_tol) {
  require_q(q_abs, "build_rho_av");
  require_n_max(n_max, "build_rho_av");
  const double s = q_abs * q_abs;
  check_tail(s, n_max, tail_tol, "build_rho_av");

  TruncatedDensityMatrix rho;
  rho.n_max = n_max;
  rho.q_abs = q_abs;
  const Eigen::Index dim = 2 * rho.fock_dim();
  rho.entries = Eigen::MatrixXd::Zero(dim, dim);

  const double root = std::sqrt(1.0 - s);
  double sn = 1.0;
  for (int n = 0; n <= n_max; ++n, sn *= s) {
    const double c = 0.5 * (1.0 - s) * sn;
    const Eigen::Index i0 = rho.index(0, n);
    const Eigen::Index i1 = rho.index(1, n + 1);
    const double off = c * root * std::sqrt(n + 1.0);
    rho.entries(i0, i0) = c;
    rho.entries(i0, i1) = off;
    rho.entries(i1, i0) = off;
    rho.entries(i1, i1) = c * (1.0 - s) * (n + 1.0);
  }
  // 1 - trace = s^{N+1} (N + 3 - (N + 1) s) / 2.
  rho.tail_bound = 0.5 * discarded_weight(s, n_max) * (n_max + 3.0 - (n_max + 1.0) * s);
  return rho;
}

TruncatedDensityMatrix build_rho_av_converged(double q_abs, double tail_tol) {
  return build_rho_av(q_abs, choose_n_max(q_abs, tail_tol), tail_tol);
}

Eigen::Matrix2d reduced_alice(const TruncatedDensityMatrix& rho) {
  const Eigen::Index d = rho.fock_dim();
  Eigen::Matrix2d out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out(a, b) = rho.entries.block(a * d, b * d, d, d).trace();
  return out;
}

Eigen::MatrixXd reduced_vic(const TruncatedDensityMatrix& rho) {
  const Eigen::Index d = rho.fock_dim();
  return rho.entries.topLeftCorner(d, d) + rho.entries.bottomRightCorner(d, d);
}

Eigen::MatrixXd partial_transpose(const TruncatedDensityMatrix& rho) {
  const Eigen::Index d = rho.fock_dim();
  Eigen::MatrixXd out(2 * d, 2 * d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.block(b * d, a * d, d, d) = rho.entries.block(a * d, b * d, d, d);
  return out;
}

namespace {

PTSpectrum finish_spectrum(Eigen::VectorXd eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  CompensatedSum<double> neg;
  for (double v : eigenvalues)
    if (v < 0.0) neg.add(v);
  return {std::move(eigenvalues), neg.value()};
}

}  // namespace

PTSpectrum pt_spectrum_numeric(const TruncatedDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(partial_transpose(rho), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenConvergenceError("pt_spectrum_numeric: eigensolver did not converge");
  return finish_spectrum(solver.eigenvalues());
}

PTSpectrum pt_spectrum_blocks(double q_abs, int n_max) {
  require_q(q_abs, "pt_spectrum_blocks");
  require_n_max(n_max, "pt_spectrum_blocks");
  const double s = q_abs * q_abs;
  const double u = 1.0 - s;
  Eigen::VectorXd ev(2 * (n_max + 2));
  Eigen::Index k = 0;

  double sn = 1.0;       // s^n
  double n_snm1 = 0.0;   // n s^{n-1}
  for (int n = 0; n <= n_max; ++n) {
    const double diag1 = 0.5 * u * u * n_snm1;                   // <1,n|
    const double diag2 = n < n_max ? 0.5 * u * sn * s : 0.0;     // <0,n+1|
    const double off = 0.5 * u * std::sqrt(u) * sn * std::sqrt(n + 1.0);
    const auto [hi, lo] = symmetric_2x2(diag1, off, diag2);
    ev(k++) = hi;
    ev(k++) = lo;
    n_snm1 = (n + 1.0) * sn;
    sn *= s;
  }
  ev(k++) = 0.5 * u;                 // <0,0|
  ev(k++) = 0.5 * u * u * n_snm1;    // <1,n_max+1|
  return finish_spectrum(std::move(ev));
}

std::pair<double, double> pt_eigenvalues_closed_form(double q_abs, int n) {
  require_q(q_abs, "pt_eigenvalues_closed_form");
  if (n < 0) throw DomainError("pt_eigenvalues_closed_form: n must be >= 0");
  const double s = q_abs * q_abs;
  const double lead = n * s / std::sqrt(1.0 - s) + s;
  const double root_z = std::sqrt(lead * lead + 4.0 * (1.0 - s));
  const double pre = 0.25 * std::pow(s, n) * (1.0 - s);
  return {pre * (lead + root_z), pre * (lead - root_z)};
}

double log_negativity(const PTSpectrum& spectrum) {
  CompensatedSum<double> norm;
  for (double v : spectrum.eigenvalues) norm.add(std::abs(v));
  return std::log2(norm.value());
}

double log_negativity(const TruncatedDensityMatrix& rho) {
  return log_negativity(pt_spectrum_numeric(rho));
}

double log_negativity_closed_form(double q_abs, int n_max) {
  require_q(q_abs, "log_negativity_closed_form");
  const double s = q_abs * q_abs;
  CompensatedSum<double> sum;
  sum.add(0.5 * (1.0 - s));
  double sn = 1.0;
  for (int n = 0; n <= n_max; ++n, sn *= s) {
    const double lead = n * s / std::sqrt(1.0 - s) + s;
    const double z = lead * lead + 4.0 * (1.0 - s);
    sum.add(0.25 * sn * (1.0 - s) * std::sqrt(z));
  }
  return std::log2(sum.value());
}

double entropy_of_weights(const Eigen::Ref<const Eigen::VectorXd>& weights) {
  CompensatedSum<double> sum;
  for (double p : weights) {
    if (p < kEntropyClip) {
      throw NegativeEigenvalueError("entropy: eigenvalue " + std::to_string(p) + " below -1e-10");
    }
    if (p > 0.0) sum.add(-p * std::log2(p));
  }
  return sum.value();
}

double mutual_information(const TruncatedDensityMatrix& rho) {
  return entropy(reduced_alice(rho)) + entropy(reduced_vic(rho)) - entropy(rho.entries);
}

double mutual_information_closed_form(double q_abs, int n_max) {
  require_q(q_abs, "mutual_information_closed_form");
  if (q_abs == 0.0) throw DomainError("mutual_information_closed_form: singular at q = 0, the limit is 2");
  const double s = q_abs * q_abs;
  const double u = 1.0 - s;
  auto xlog2x = [](double x) { return x * std::log2(x); };
  CompensatedSum<double> series;
  double sn = 1.0;
  for (int n = 0; n <= n_max; ++n, sn *= s) {
    const double d = xlog2x(1.0 + n * u / s) - xlog2x(1.0 + (n + 1.0) * u);
    series.add(sn * d);
  }
  return 1.0 - 0.5 * std::log2(s) - 0.5 * u * series.value();
}

}  // namespace nua
