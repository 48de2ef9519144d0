#pragma once

// Truncated Alice-Vic state built from |q|, its partial transpose,
// log-negativity, entropies and mutual information. The matrix paths are
// authoritative; the *_closed_form functions evaluate the printed series
// verbatim and exist for discrepancy reports.
//
// Basis |a, n>: a in {0, 1} is Alice's qubit, 0 <= n <= n_max + 1 is Vic's
// Fock number. Flat index a (n_max + 2) + n.

#include <utility>

#include <Eigen/Dense>

#include "nua/errors.hpp"
#include "nua/specfun.hpp"

namespace nua {

inline constexpr double kDefaultTailTol = 1e-14;

struct TruncatedDensityMatrix {
  int n_max = 0;
  double q_abs = 0.0;
  Eigen::MatrixXd entries;
  double tail_bound = 0.0;  // 1 - trace, exact for the truncated sum

  Eigen::Index fock_dim() const { return n_max + 2; }
  Eigen::Index index(int a, int n) const { return a * fock_dim() + n; }
};

struct PTSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  double negative_sum = 0.0;
};

struct EntanglementPoint {
  double T0 = 0.0;
  double q_abs = 0.0;
  double N = 0.0;  // bits
  double I = 0.0;  // bits
};

// Smallest n with |q|^{2(n+1)} < tail_tol, clamped to [8, 512].
// Throws TruncationError if 512 does not reach tail_tol.
int choose_n_max(double q_abs, double tail_tol = kDefaultTailTol);

// p_n = (1 - |q|^2) |q|^{2n}, n = 0..n_max.
// Throws TruncationError if |q|^{2(n_max+1)} > tail_tol.
Eigen::VectorXd squeezed_vacuum_weights(double q_abs, int n_max, double tail_tol = kDefaultTailTol);

// rho_AV = (1 - s)/2 sum_{n <= n_max} s^n rho_n, s = |q|^2.
// Same TruncationError contract as squeezed_vacuum_weights.
TruncatedDensityMatrix build_rho_av(double q_abs, int n_max, double tail_tol = kDefaultTailTol);
// n_max from choose_n_max.
TruncatedDensityMatrix build_rho_av_converged(double q_abs, double tail_tol = kDefaultTailTol);

Eigen::Matrix2d reduced_alice(const TruncatedDensityMatrix& rho);
Eigen::MatrixXd reduced_vic(const TruncatedDensityMatrix& rho);

// Transpose on Alice's index.
Eigen::MatrixXd partial_transpose(const TruncatedDensityMatrix& rho);

// Full symmetric eigensolve of the partial transpose.
// Throws EigenConvergenceError.
PTSpectrum pt_spectrum_numeric(const TruncatedDensityMatrix& rho);
// Same spectrum from the 2x2 blocks {|1,n>, |0,n+1>}, n = 0..n_max, plus the
// diagonal leftovers |0,0> and |1,n_max+1>.
PTSpectrum pt_spectrum_blocks(double q_abs, int n_max);

// The printed (lambda+, lambda-) of block n.
std::pair<double, double> pt_eigenvalues_closed_form(double q_abs, int n);

// log2 of the trace norm of the partial transpose.
double log_negativity(const TruncatedDensityMatrix& rho);
double log_negativity(const PTSpectrum& spectrum);
// The printed series, summed to n_max.
double log_negativity_closed_form(double q_abs, int n_max);

// -sum p log2 p. Entries in [-1e-10, 0] count as zero;
// below -1e-10 throws NegativeEigenvalueError.
double entropy_of_weights(const Eigen::Ref<const Eigen::VectorXd>& weights);

template <typename Derived>
double entropy(const Eigen::MatrixBase<Derived>& rho) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> solver(rho.eval(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw EigenConvergenceError("entropy: eigensolver did not converge");
  return entropy_of_weights(solver.eigenvalues());
}

// S(rho_A) + S(rho_V) - S(rho_AV).
double mutual_information(const TruncatedDensityMatrix& rho);
// 1 - log2(s)/2 - (1 - s)/2 sum_n s^n D_n, summed to n_max.
// Throws DomainError at q = 0, where the value is the limit 2.
double mutual_information_closed_form(double q_abs, int n_max);

}  // namespace nua
