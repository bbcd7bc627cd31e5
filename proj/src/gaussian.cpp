#include "beamlab/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beamlab::gaussian {

CovarianceState vacuum_cov(int modes) {
  if (modes < 1) throw std::invalid_argument("vacuum_cov: modes must be >= 1");
  CovarianceState s;
  s.modes = modes;
  s.mean = Eigen::VectorXd::Zero(2 * modes);
  s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes);
  return s;
}

CovarianceState coherent_cov(std::complex<double> alpha) {
  CovarianceState s = vacuum_cov(1);
  s.mean(0) = std::sqrt(2.0) * alpha.real();
  s.mean(1) = std::sqrt(2.0) * alpha.imag();
  return s;
}

CovarianceState tmss_cov(double r, double phi) {
  CovarianceState s = vacuum_cov(2);
  const double c = std::cosh(2.0 * r) / 2.0;
  const double k = std::sinh(2.0 * r) / 2.0;
  Eigen::Matrix2d off;
  off << std::cos(2.0 * phi), std::sin(2.0 * phi),  //
      std::sin(2.0 * phi), -std::cos(2.0 * phi);
  off *= k;
  s.cov.block<2, 2>(0, 0) = c * Eigen::Matrix2d::Identity();
  s.cov.block<2, 2>(2, 2) = c * Eigen::Matrix2d::Identity();
  s.cov.block<2, 2>(0, 2) = off;
  s.cov.block<2, 2>(2, 0) = off.transpose();
  return s;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

namespace {

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov, int modes) {
  // eigenvalues of i Omega cov come in pairs +-nu; collect the positive ones
  Eigen::MatrixXcd m =
      std::complex<double>(0, 1) * symplectic_form(modes) * cov;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<double> nu;
  for (int k = 0; k < m.rows(); ++k) {
    double v = es.eigenvalues()(k).real();
    if (v > 0.0) nu.push_back(v);
  }
  std::sort(nu.begin(), nu.end());
  if (static_cast<int>(nu.size()) != modes)
    throw std::runtime_error("symplectic spectrum: degenerate pairing");
  return nu;
}

}  // namespace

std::vector<double> symplectic_eigenvalues(const CovarianceState& s) {
  return symplectic_spectrum(s.cov, s.modes);
}

double uncertainty_min_eig(const CovarianceState& s) {
  Eigen::MatrixXcd m = s.cov.cast<std::complex<double>>() +
                       std::complex<double>(0, 0.5) *
                           symplectic_form(s.modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return es.eigenvalues().minCoeff();
}

double log_negativity(const CovarianceState& s) {
  if (s.modes != 2)
    throw std::invalid_argument("log_negativity: two-mode states only");
  // partial transposition flips the sign of p on the second mode
  Eigen::Matrix4d flip = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
  auto nu = symplectic_spectrum(flip * s.cov * flip, 2);
  return std::max(0.0, -std::log2(2.0 * nu.front()));
}

double bk_teleport_fidelity(double r, double gain) {
  // each output quadrature carries variance
  //   g^2/2 + [(1+g^2) cosh 2r - 2 g sinh 2r] / 2
  // relative to the (vacuum-noise) target, so the coherent-state overlap is
  // 1 / (V + 1/2).
  const double v = gain * gain / 2.0 +
                   ((1.0 + gain * gain) * std::cosh(2.0 * r) -
                    2.0 * gain * std::sinh(2.0 * r)) /
                       2.0;
  return 1.0 / (v + 0.5);
}

}  // namespace beamlab::gaussian
