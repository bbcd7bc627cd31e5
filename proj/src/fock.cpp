#include "beamlab/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "beamlab/errors.hpp"

namespace beamlab::fock {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTmssNormTol = 1e-8;

void require_dim(int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
}

void require_modes(const FockVector& s, int modes, const char* what) {
  if (s.modes != modes) throw std::invalid_argument(what);
}

void require_modes(const FockOperator& s, int modes, const char* what) {
  if (s.modes != modes) throw std::invalid_argument(what);
}

// exp(G) for anti-Hermitian G through the Hermitian eigenbasis of -iG
Eigen::MatrixXcd exp_antihermitian(const Eigen::MatrixXcd& g) {
  Eigen::MatrixXcd h = Complex(0, -1) * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases =
      (Complex(0, 1) * es.eigenvalues().array()).exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FockVector FockVector::normalized() const {
  FockVector out = *this;
  double n = norm();
  if (n <= 0.0) throw std::invalid_argument("cannot normalize a null vector");
  out.amplitudes /= n;
  return out;
}

double FockOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

FockVector vacuum_state(int dim) {
  require_dim(dim);
  FockVector v{dim, 1, Eigen::VectorXcd::Zero(dim)};
  v.amplitudes(0) = 1.0;
  return v;
}

FockVector number_state(int n, int dim) {
  require_dim(dim);
  if (n < 0 || n >= dim)
    throw std::invalid_argument("photon number outside the truncated basis");
  FockVector v{dim, 1, Eigen::VectorXcd::Zero(dim)};
  v.amplitudes(n) = 1.0;
  return v;
}

FockVector coherent_state(Complex alpha, int dim) {
  require_dim(dim);
  FockVector v{dim, 1, Eigen::VectorXcd(dim)};
  Complex c = std::exp(-0.5 * std::norm(alpha));
  v.amplitudes(0) = c;
  for (int n = 1; n < dim; ++n) {
    c *= alpha / std::sqrt(double(n));
    v.amplitudes(n) = c;
  }
  return v;
}

// Poisson occupation tail: mean |alpha|^2, std |alpha|; six sigma of
// headroom above the mean keeps the truncated mass negligible.
double coherent_truncation_margin(Complex alpha, int dim) {
  return double(dim) - std::norm(alpha) - 6.0 * std::abs(alpha);
}

FockVector two_mode_squeezed(double r, double phi, int dim) {
  require_dim(dim);
  if (r < 0.0) throw std::invalid_argument("squeezing must be nonnegative");
  const double t = std::tanh(r);
  if (std::pow(t, 2 * dim) > kTmssNormTol)
    throw TruncationError(
        "two-mode squeezed tail exceeds the truncation tolerance; raise dim");
  FockVector v{dim, 2, Eigen::VectorXcd::Zero(dim * dim)};
  const Complex step = t * std::exp(Complex(0, 2.0 * phi));
  Complex c = 1.0 / std::cosh(r);
  for (int n = 0; n < dim; ++n) {
    v.amplitudes(n * dim + n) = c;
    c *= step;
  }
  return v;
}

FockOperator poisson_number_mixture(double mag, int dim) {
  require_dim(dim);
  if (mag < 0.0) throw std::invalid_argument("magnitude must be nonnegative");
  const double mean = mag * mag;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  double p = std::exp(-mean);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = p;
    p *= mean / double(n + 1);
  }
  return {dim, 1, m};
}

FockOperator phase_average(double mag, int dim, int points) {
  require_dim(dim);
  if (points < 1) throw std::invalid_argument("grid must have at least 1 point");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < points; ++k) {
    const double phi = 2.0 * kPi * double(k) / double(points);
    auto psi = coherent_state(mag * std::exp(Complex(0, phi)), dim);
    m.noalias() += psi.amplitudes * psi.amplitudes.adjoint();
  }
  m /= double(points);
  return {dim, 1, m};
}

FockOperator thermal_state(double nbar, int dim) {
  require_dim(dim);
  if (nbar < 0.0) throw std::invalid_argument("nbar must be nonnegative");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  for (int n = 0; n < dim; ++n) {
    m(n, n) = p;
    p *= ratio;
  }
  return {dim, 1, m};
}

FockOperator density(const FockVector& psi) {
  return {psi.dim, psi.modes,
          (psi.amplitudes * psi.amplitudes.adjoint()).eval()};
}

Eigen::MatrixXcd annihilation_matrix(int dim) {
  require_dim(dim);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Eigen::MatrixXcd number_matrix(int dim) {
  require_dim(dim);
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

Eigen::MatrixXcd displacement_matrix(Complex beta, int dim) {
  require_dim(dim);
  Eigen::MatrixXcd a = annihilation_matrix(dim);
  Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
  return exp_antihermitian(gen);
}

const Eigen::MatrixXcd& beamsplitter_matrix(int dim) {
  require_dim(dim);
  static std::mutex mu;
  static std::map<int, Eigen::MatrixXcd> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;

  // The generator theta (a^dag b - a b^dag) conserves total photon number,
  // so exponentiate block-by-block over n + m = s instead of densely.
  const double theta = kPi / 4.0;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (int s = 0; s <= 2 * (dim - 1); ++s) {
    const int lo = std::max(0, s - dim + 1);
    const int hi = std::min(s, dim - 1);
    const int size = hi - lo + 1;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(size, size);
    for (int i = 0; i + 1 < size; ++i) {
      const int n = lo + i;  // couples |n, s-n> and |n+1, s-n-1>
      const double w = theta * std::sqrt(double(n + 1) * double(s - n));
      block(i + 1, i) = w;
      block(i, i + 1) = -w;
    }
    Eigen::MatrixXcd eb = exp_antihermitian(block);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const int row = (lo + i) * dim + (s - lo - i);
        const int col = (lo + j) * dim + (s - lo - j);
        u(row, col) = eb(i, j);
      }
  }
  return cache.emplace(dim, std::move(u)).first->second;
}

FockVector tensor(const FockVector& a, const FockVector& b) {
  require_modes(a, 1, "tensor expects single-mode factors");
  require_modes(b, 1, "tensor expects single-mode factors");
  if (a.dim != b.dim)
    throw std::invalid_argument("tensor factors must share a dimension");
  const int d = a.dim;
  FockVector out{d, 2, Eigen::VectorXcd(d * d)};
  for (int n = 0; n < d; ++n)
    out.amplitudes.segment(n * d, d) = a.amplitudes(n) * b.amplitudes;
  return out;
}

namespace {

Eigen::MatrixXcd embed_one_mode(const Eigen::MatrixXcd& op, int dim, int mode) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) {
      if (mode == 0) {
        // op acts on the first index
        for (int k = 0; k < dim; ++k)
          out(n * dim + k, m * dim + k) = op(n, m);
      } else {
        for (int k = 0; k < dim; ++k)
          out(k * dim + n, k * dim + m) = op(n, m);
      }
    }
  return out;
}

}  // namespace

FockVector displacement_apply(Complex beta, const FockVector& s, int mode) {
  if (mode < 0 || mode >= s.modes)
    throw std::invalid_argument("mode index outside the state");
  Eigen::MatrixXcd d = displacement_matrix(beta, s.dim);
  FockVector out = s;
  if (s.modes == 1) {
    out.amplitudes = d * s.amplitudes;
  } else {
    out.amplitudes = embed_one_mode(d, s.dim, mode) * s.amplitudes;
  }
  return out;
}

FockOperator displacement_apply(Complex beta, const FockOperator& s, int mode) {
  if (mode < 0 || mode >= s.modes)
    throw std::invalid_argument("mode index outside the state");
  Eigen::MatrixXcd d = displacement_matrix(beta, s.dim);
  if (s.modes == 2) d = embed_one_mode(d, s.dim, mode);
  return {s.dim, s.modes, (d * s.entries * d.adjoint()).eval()};
}

FockVector beamsplitter_apply(const FockVector& s) {
  require_modes(s, 2, "beamsplitter needs a two-mode state");
  const auto& u = beamsplitter_matrix(s.dim);
  return {s.dim, 2, (u * s.amplitudes).eval()};
}

FockOperator beamsplitter_apply(const FockOperator& s) {
  require_modes(s, 2, "beamsplitter needs a two-mode state");
  const auto& u = beamsplitter_matrix(s.dim);
  return {s.dim, 2, (u * s.entries * u.adjoint()).eval()};
}

Eigen::VectorXcd quadrature_eigenvector(double x, double theta, int dim) {
  require_dim(dim);
  // Hermite functions psi_n(x), vacuum variance 1/2:
  // psi_0 = pi^{-1/4} e^{-x^2/2},
  // psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
  Eigen::VectorXcd q(dim);
  double prev2 = 0.0;
  double prev1 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  q(0) = prev1;
  for (int n = 1; n < dim; ++n) {
    double cur = x * std::sqrt(2.0 / double(n)) * prev1 -
                 std::sqrt(double(n - 1) / double(n)) * prev2;
    q(n) = cur;
    prev2 = prev1;
    prev1 = cur;
  }
  if (theta != 0.0)
    for (int n = 0; n < dim; ++n)
      q(n) *= std::exp(Complex(0, theta * double(n)));
  return q;
}

FockOperator partial_trace(const FockOperator& rho, int keep) {
  require_modes(rho, 2, "partial trace needs a two-mode operator");
  if (keep != 0 && keep != 1)
    throw std::invalid_argument("keep must name mode 0 or 1");
  const int d = rho.dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      Complex sum = 0.0;
      for (int k = 0; k < d; ++k)
        sum += keep == 0 ? rho.entries(n * d + k, m * d + k)
                         : rho.entries(k * d + n, k * d + m);
      out(n, m) = sum;
    }
  return {d, 1, out};
}

FockOperator partial_transpose(const FockOperator& rho) {
  require_modes(rho, 2, "partial transpose needs a two-mode operator");
  const int d = rho.dim;
  Eigen::MatrixXcd out(d * d, d * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m)
      for (int np = 0; np < d; ++np)
        for (int mp = 0; mp < d; ++mp)
          out(n * d + m, np * d + mp) = rho.entries(n * d + mp, np * d + m);
  return {d, 2, out};
}

double partial_transpose_min_eig(const FockOperator& rho) {
  return partial_transpose(rho).min_eigenvalue();
}

double log_negativity(const FockOperator& rho) {
  auto pt = partial_transpose(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt.entries,
                                                     Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

namespace {

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

StateMetrics state_metrics(const FockOperator& a, const FockOperator& b) {
  if (a.dim != b.dim || a.modes != b.modes)
    throw std::invalid_argument("state metrics need matching shapes");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diff(a.entries - b.entries,
                                                       Eigen::EigenvaluesOnly);
  const double tdist = 0.5 * diff.eigenvalues().cwiseAbs().sum();

  Eigen::MatrixXcd ra = psd_sqrt(a.entries);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(ra * b.entries * ra,
                                                        Eigen::EigenvaluesOnly);
  // eigenvalues below the solver's noise floor would inflate the root sum
  // (sqrt amplifies them); drop everything far below the leading one
  const double floor =
      std::max(0.0, inner.eigenvalues().maxCoeff()) * 1e-12;
  double root_sum = 0.0;
  for (int i = 0; i < inner.eigenvalues().size(); ++i) {
    const double ev = inner.eigenvalues()(i);
    if (ev > floor) root_sum += std::sqrt(ev);
  }
  return {tdist, root_sum * root_sum};
}

double mean_photon_number(const FockVector& psi, int mode) {
  if (mode < 0 || mode >= psi.modes)
    throw std::invalid_argument("mode index outside the state");
  const int d = psi.dim;
  double sum = 0.0;
  if (psi.modes == 1) {
    for (int n = 0; n < d; ++n)
      sum += double(n) * std::norm(psi.amplitudes(n));
  } else {
    for (int n = 0; n < d; ++n)
      for (int m = 0; m < d; ++m)
        sum += double(mode == 0 ? n : m) * std::norm(psi.amplitudes(n * d + m));
  }
  return sum;
}

double mean_photon_number(const FockOperator& rho, int mode) {
  if (mode < 0 || mode >= rho.modes)
    throw std::invalid_argument("mode index outside the state");
  const int d = rho.dim;
  double sum = 0.0;
  if (rho.modes == 1) {
    for (int n = 0; n < d; ++n) sum += double(n) * rho.entries(n, n).real();
  } else {
    for (int n = 0; n < d; ++n)
      for (int m = 0; m < d; ++m)
        sum += double(mode == 0 ? n : m) * rho.entries(n * d + m, n * d + m).real();
  }
  return sum;
}

}  // namespace beamlab::fock
