#pragma once

#include <Eigen/Dense>
#include <complex>

namespace beamlab::fock {

using Complex = std::complex<double>;

// Pure state in a photon-number basis truncated at dim levels per mode.
// Two-mode amplitudes are stored row-major: index(n, m) = n * dim + m.
// Truncated states are deliberately kept sub-normalized; the norm deficit is
// the truncation loss and every consumer can interrogate it.
struct FockVector {
  int dim = 0;
  int modes = 1;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
  double truncation_loss() const { return 1.0 - amplitudes.squaredNorm(); }
  FockVector normalized() const;
};

// Hermitian operator (usually a density operator) on the same basis.
struct FockOperator {
  int dim = 0;
  int modes = 1;
  Eigen::MatrixXcd entries;

  double trace_real() const { return entries.trace().real(); }
  double truncation_loss() const { return 1.0 - trace_real(); }
  double hermiticity_error() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  }
  double min_eigenvalue() const;
};

// ---- constructors ----------------------------------------------------

FockVector vacuum_state(int dim);
FockVector number_state(int n, int dim);
FockVector coherent_state(Complex alpha, int dim);
FockVector two_mode_squeezed(double r, double phi, int dim);

FockOperator poisson_number_mixture(double mag, int dim);
FockOperator phase_average(double mag, int dim, int points);
FockOperator thermal_state(double nbar, int dim);
FockOperator density(const FockVector& psi);

// dim - |alpha|^2 - 6|alpha| (Poisson mean plus six standard deviations);
// negative means dim is too small to hold a coherent state of this amplitude
double coherent_truncation_margin(Complex alpha, int dim);

// ---- mode algebra ----------------------------------------------------

Eigen::MatrixXcd annihilation_matrix(int dim);
Eigen::MatrixXcd number_matrix(int dim);
Eigen::MatrixXcd displacement_matrix(Complex beta, int dim);

// 50-50 beamsplitter on the fixed convention
// (a, b) -> ((a + b)/sqrt2, (b - a)/sqrt2); cached per dimension
const Eigen::MatrixXcd& beamsplitter_matrix(int dim);

FockVector tensor(const FockVector& a, const FockVector& b);

FockVector displacement_apply(Complex beta, const FockVector& s, int mode = 0);
FockOperator displacement_apply(Complex beta, const FockOperator& s,
                                int mode = 0);
FockVector beamsplitter_apply(const FockVector& s);
FockOperator beamsplitter_apply(const FockOperator& s);

// Quadrature eigenvector <n|x;theta> = e^{i n theta} psi_n(x) with psi_n the
// Hermite function (vacuum variance 1/2). theta = 0 is the x quadrature,
// theta = pi/2 the p quadrature.
Eigen::VectorXcd quadrature_eigenvector(double x, double theta, int dim);

// ---- two-mode reductions ----------------------------------------------

FockOperator partial_trace(const FockOperator& rho, int keep);
FockOperator partial_transpose(const FockOperator& rho);
double partial_transpose_min_eig(const FockOperator& rho);
double log_negativity(const FockOperator& rho);  // bits

// ---- metrics ----------------------------------------------------------

struct StateMetrics {
  double trace_distance;
  double fidelity;
};
StateMetrics state_metrics(const FockOperator& a, const FockOperator& b);

double mean_photon_number(const FockVector& psi, int mode = 0);
double mean_photon_number(const FockOperator& rho, int mode = 0);

}  // namespace beamlab::fock
