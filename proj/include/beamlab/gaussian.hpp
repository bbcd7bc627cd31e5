#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace beamlab::gaussian {

// Gaussian state as first and second quadrature moments.
// Ordering (x1, p1, x2, p2, ...); vacuum variance 1/2 on each quadrature,
// i.e. x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
struct CovarianceState {
  int modes = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

CovarianceState vacuum_cov(int modes);
CovarianceState coherent_cov(std::complex<double> alpha);

// Two-mode squeezed state generated by a pump of phase phi: diagonal blocks
// (cosh 2r)/2 * I, off-diagonal block (sinh 2r)/2 * R(phi) diag(1,-1) R(phi)^T.
CovarianceState tmss_cov(double r, double phi = 0.0);

Eigen::MatrixXd symplectic_form(int modes);

// Symplectic spectrum of the covariance (eigenvalues of |i Omega cov|),
// sorted ascending; >= 1/2 for physical states.
std::vector<double> symplectic_eigenvalues(const CovarianceState& s);

// min eigenvalue of cov + (i/2) Omega; >= -tol certifies a physical state
double uncertainty_min_eig(const CovarianceState& s);

// Log-negativity of a two-mode Gaussian state in bits:
// max(0, -log2(2 nu-)) with nu- the smaller symplectic eigenvalue of the
// partially transposed covariance.
double log_negativity(const CovarianceState& s);

// Mean fidelity of continuous-variable teleportation of coherent states over
// a two-mode squeezed resource at the given classical gain, from the output
// covariance (exact for any coherent input at unit gain; vacuum-mean input
// otherwise). Unit gain: 1 / (1 + e^{-2r}).
double bk_teleport_fidelity(double r, double gain = 1.0);

}  // namespace beamlab::gaussian
