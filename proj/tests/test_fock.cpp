#include <doctest.h>

#include <cmath>
#include <complex>

#include "beamlab/errors.hpp"
#include "beamlab/fock.hpp"
#include "beamlab/rng.hpp"
#include "oracles.hpp"

using namespace beamlab;
using fock::Complex;

namespace {
constexpr double kPi = 3.14159265358979323846;

fock::FockOperator random_density(int dim, Rng& rng) {
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {dim, 1, rho};
}
}  // namespace

TEST_CASE("coherent state amplitudes and moments") {
  const Complex alpha(0.8, -0.5);
  auto psi = fock::coherent_state(alpha, 40);
  auto ref = oracle::coherent_series(alpha, 40);
  CHECK((psi.amplitudes - ref).cwiseAbs().maxCoeff() < 1e-14);

  // truncated tail is tiny at this dim, mean photon = |alpha|^2
  auto one = fock::coherent_state(Complex(1.0, 0.0), 30);
  CHECK(fock::mean_photon_number(one) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.truncation_loss() < 1e-12);

  // alpha = 0 is the vacuum exactly
  auto vac = fock::coherent_state(Complex(0.0, 0.0), 12);
  CHECK(vac.amplitudes(0) == Complex(1.0, 0.0));
  CHECK(vac.amplitudes.tail(11).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(fock::coherent_state(Complex(1, 0), 1),
                  std::invalid_argument);
}

TEST_CASE("poisson number mixture matches the pmf and has no coherences") {
  const double mag = 1.3;
  auto rho = fock::poisson_number_mixture(mag, 25);
  for (int n = 0; n < 25; ++n) {
    CHECK(std::abs(rho.entries(n, n).real() -
                   oracle::poisson_pmf(mag * mag, n)) < 1e-15);
    for (int m = 0; m < 25; ++m)
      if (m != n) CHECK(std::abs(rho.entries(n, m)) == 0.0);
  }
  CHECK(rho.hermiticity_error() < 1e-12);
  CHECK(rho.min_eigenvalue() > -1e-10);
}

TEST_CASE("phase average over an adequate grid is the number mixture") {
  // grid >= 2*dim - 1 makes every off-diagonal average vanish exactly
  auto avg = fock::phase_average(1.0, 20, 40);
  auto mix = fock::poisson_number_mixture(1.0, 20);
  auto m = fock::state_metrics(avg, mix);
  CHECK(m.trace_distance < 1e-12);
  CHECK(avg.hermiticity_error() < 1e-12);
  CHECK(avg.min_eigenvalue() > -1e-10);
}

TEST_CASE("undersized phase grid aliases onto multiples of the grid size") {
  auto avg = fock::phase_average(1.0, 20, 3);
  for (int n = 0; n < 20; ++n)
    for (int m = 0; m < 20; ++m) {
      if ((n - m) % 3 != 0)
        CHECK(std::abs(avg.entries(n, m)) < 1e-15);
    }
  // the surviving coherence three steps off the diagonal is macroscopic
  CHECK(std::abs(avg.entries(3, 0)) > 0.1);
}

TEST_CASE("displacement operator is unitary and matches the expm oracle") {
  const Complex beta(0.3, -0.8);
  auto d = fock::displacement_matrix(beta, 25);
  CHECK((d.adjoint() * d - Eigen::MatrixXcd::Identity(25, 25))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  auto ref = oracle::displacement_expm(beta, 25);
  CHECK((d - ref).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacing a coherent state shifts the label with the right phase") {
  const Complex alpha(0.6, 0.2), beta(-0.4, 0.5);
  auto moved = fock::displacement_apply(beta, fock::coherent_state(alpha, 40));
  const Complex phase =
      std::exp(Complex(0, 1) * std::imag(beta * std::conj(alpha)));
  auto target = fock::coherent_state(alpha + beta, 40);
  CHECK((moved.amplitudes - phase * target.amplitudes).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("displacement composition picks up exp(i Im(beta gamma*))") {
  const Complex beta(0.5, 0.1), gamma(-0.2, 0.4);
  auto psi = fock::coherent_state(Complex(0.3, -0.3), 35);
  auto two_step =
      fock::displacement_apply(beta, fock::displacement_apply(gamma, psi));
  auto one_step = fock::displacement_apply(beta + gamma, psi);
  const Complex phase =
      std::exp(Complex(0, 1) * std::imag(beta * std::conj(gamma)));
  CHECK((two_step.amplitudes - phase * one_step.amplitudes)
            .cwiseAbs()
            .maxCoeff() < 1e-9);
}

TEST_CASE("beamsplitter matrix against the generator exponential") {
  const int dim = 8;
  const auto& u = fock::beamsplitter_matrix(dim);
  auto ref = oracle::beamsplitter_expm(dim, kPi / 4.0);
  CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((u.adjoint() * u -
         Eigen::MatrixXcd::Identity(dim * dim, dim * dim))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  // total photon number commutes through
  Eigen::MatrixXcd ntot =
      oracle::kron(fock::number_matrix(dim),
                   Eigen::MatrixXcd::Identity(dim, dim)) +
      oracle::kron(Eigen::MatrixXcd::Identity(dim, dim),
                   fock::number_matrix(dim));
  CHECK((u * ntot - ntot * u).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("beamsplitter on coherent inputs relabels the amplitudes") {
  const Complex a(0.8, 0.0), b(0.0, 0.4);
  auto in = fock::tensor(fock::coherent_state(a, 18),
                         fock::coherent_state(b, 18));
  auto out = fock::beamsplitter_apply(in);
  const double s = std::sqrt(0.5);
  auto want = fock::tensor(fock::coherent_state((a + b) * s, 18),
                           fock::coherent_state((b - a) * s, 18));
  CHECK((out.amplitudes - want.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("single photon splits into the odd superposition") {
  auto in = fock::tensor(fock::number_state(1, 6), fock::vacuum_state(6));
  auto out = fock::beamsplitter_apply(in);
  const double s = std::sqrt(0.5);
  CHECK(std::abs(out.amplitudes(1 * 6 + 0) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(out.amplitudes(0 * 6 + 1) - Complex(-s, 0)) < 1e-12);
  CHECK(out.amplitudes.cwiseAbs().sum() ==
        doctest::Approx(2 * s).epsilon(1e-10));
}

TEST_CASE("two-mode squeezed state: Schmidt series and generator exponential") {
  const double r = 0.3, phi = 0.7;
  const int dim = 16;
  auto psi = fock::two_mode_squeezed(r, phi, dim);
  const double t = std::tanh(r);

  // closed form on the diagonal |n,n>, zero elsewhere
  for (int n = 0; n < dim; ++n) {
    Complex want = std::pow(t, n) *
                   std::exp(Complex(0, 2.0 * phi * n)) / std::cosh(r);
    CHECK(std::abs(psi.amplitudes(n * dim + n) - want) < 1e-12);
  }
  CHECK(fock::mean_photon_number(psi, 0) ==
        doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-9));
  CHECK(fock::mean_photon_number(psi, 1) ==
        doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-9));

  // independent route: exponentiate the truncated two-mode squeeze generator;
  // interior amplitudes must agree (boundary effects die off as t^{2(D-n)})
  auto ref = oracle::two_mode_squeezed_expm(r, phi, dim);
  for (int n = 0; n < 8; ++n)
    CHECK(std::abs(psi.amplitudes(n * dim + n) - ref(n * dim + n)) < 1e-8);

  CHECK_THROWS_AS(fock::two_mode_squeezed(2.5, 0.0, 4), TruncationError);
}

TEST_CASE("partial trace of the squeezed pair is a thermal state") {
  const double r = 0.5;
  auto rho = fock::density(fock::two_mode_squeezed(r, 0.0, 20));
  const double nbar = std::sinh(r) * std::sinh(r);
  for (int keep = 0; keep < 2; ++keep) {
    auto red = fock::partial_trace(rho, keep);
    auto th = fock::thermal_state(nbar, 20);
    auto m = fock::state_metrics(red, th);
    CHECK(m.trace_distance < 1e-9);
  }
  // partial trace of a product is the factor
  auto prod = fock::density(fock::tensor(fock::coherent_state({0.5, 0.2}, 10),
                                         fock::coherent_state({-0.3, 0.1}, 10)));
  auto factor = fock::partial_trace(prod, 0);
  auto want = fock::density(fock::coherent_state({0.5, 0.2}, 10));
  CHECK(fock::state_metrics(factor, want).trace_distance < 1e-10);
}

TEST_CASE("partial transpose flags entanglement and spares products") {
  auto ent = fock::density(fock::two_mode_squeezed(0.4, 0.0, 14));
  CHECK(fock::partial_transpose_min_eig(ent) < -0.01);

  // transpose is an involution
  auto twice = fock::partial_transpose(fock::partial_transpose(ent));
  CHECK((twice.entries - ent.entries).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(411);
  for (int it = 0; it < 10; ++it) {
    auto ra = random_density(5, rng);
    auto rb = random_density(5, rng);
    Eigen::MatrixXcd prod = oracle::kron(ra.entries, rb.entries);
    fock::FockOperator rho{5, 2, prod};
    CHECK(fock::partial_transpose_min_eig(rho) > -1e-12);
  }
}

TEST_CASE("fock-route log negativity of the squeezed pair is 2r/ln2 bits") {
  const double r = 0.4;
  auto rho = fock::density(fock::two_mode_squeezed(r, 0.0, 25));
  const double want = 2.0 * r / std::log(2.0);
  CHECK(fock::log_negativity(rho) == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("state metrics: known fidelity and trace distance anchors") {
  auto vac = fock::density(fock::vacuum_state(30));
  auto coh = fock::density(fock::coherent_state({1.0, 0.0}, 30));
  auto m = fock::state_metrics(vac, coh);
  CHECK(m.fidelity == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  auto self = fock::state_metrics(coh, coh);
  CHECK(self.trace_distance < 1e-12);
  CHECK(self.fidelity == doctest::Approx(1.0).epsilon(1e-9));

  auto zero = fock::density(fock::number_state(0, 8));
  auto one = fock::density(fock::number_state(1, 8));
  auto orth = fock::state_metrics(zero, one);
  CHECK(orth.trace_distance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orth.fidelity < 1e-12);
}

TEST_CASE("quadrature eigenvectors carry the Hermite wavefunctions") {
  // |<x|alpha>|^2 = pi^{-1/2} exp(-(x - sqrt2 Re alpha)^2), vacuum var 1/2
  const Complex alpha(0.7, 0.3);
  auto psi = fock::coherent_state(alpha, 40);
  for (double x : {-0.8, 0.0, 0.5, 1.7}) {
    auto qx = fock::quadrature_eigenvector(x, 0.0, 40);
    double dens = std::norm(qx.dot(psi.amplitudes));
    double wantx = std::exp(-std::pow(x - std::sqrt(2.0) * alpha.real(), 2)) /
                   std::sqrt(kPi);
    CHECK(dens == doctest::Approx(wantx).epsilon(1e-9));

    auto qp = fock::quadrature_eigenvector(x, kPi / 2.0, 40);
    double densp = std::norm(qp.dot(psi.amplitudes));
    double wantp = std::exp(-std::pow(x - std::sqrt(2.0) * alpha.imag(), 2)) /
                   std::sqrt(kPi);
    CHECK(densp == doctest::Approx(wantp).epsilon(1e-9));
  }

  // Riemann normalization of the n = 3 Hermite density
  auto n3 = fock::number_state(3, 20);
  double total = 0.0, dx = 0.01;
  for (double x = -10.0; x <= 10.0; x += dx) {
    auto q = fock::quadrature_eigenvector(x, 0.0, 20);
    total += std::norm(q.dot(n3.amplitudes)) * dx;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("constructed densities satisfy the operator invariants") {
  for (const auto& rho :
       {fock::poisson_number_mixture(1.5, 22), fock::phase_average(1.5, 22, 44),
        fock::thermal_state(0.8, 22)}) {
    CHECK(rho.hermiticity_error() < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-10);
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("dimension and argument validation") {
  CHECK_THROWS_AS(fock::beamsplitter_apply(fock::coherent_state({0.2, 0}, 8)),
                  std::invalid_argument);
  CHECK_THROWS_AS(fock::partial_trace(fock::poisson_number_mixture(1.0, 8), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(fock::number_state(9, 8), std::invalid_argument);
  CHECK(fock::coherent_truncation_margin({2.0, 0.0}, 30) > 0.0);
  CHECK(fock::coherent_truncation_margin({4.0, 0.0}, 20) < 0.0);
}
