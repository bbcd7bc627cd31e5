#include "beamlab/beam.hpp"

#include <cmath>
#include <stdexcept>

#include "beamlab/errors.hpp"

namespace beamlab::beam {

std::complex<double> packet_amplitude(double kappa_t,
                                      std::complex<double> alpha, double phi) {
  if (kappa_t <= 0.0)
    throw std::invalid_argument("packet_amplitude: kappa_t must be > 0");
  return std::sqrt(kappa_t) * alpha * std::polar(1.0, phi);
}

ExchangeableBeamState make_beam(double mag, long n_packets, int grid) {
  if (mag < 0.0) throw std::invalid_argument("make_beam: magnitude must be >= 0");
  if (n_packets < 1)
    throw std::invalid_argument("make_beam: need at least one packet");
  ExchangeableBeamState b;
  b.mag = mag;
  b.n_packets = n_packets;
  b.posterior = inference::PhasePosterior::uniform(grid);
  return b;
}

ExchangeableBeamState beam_from_cavity(double kappa_t,
                                       std::complex<double> cavity_alpha,
                                       long n_packets, int grid) {
  if (kappa_t <= 0.0)
    throw std::invalid_argument("beam_from_cavity: kappa_t must be > 0");
  auto b = make_beam(std::sqrt(kappa_t) * std::abs(cavity_alpha), n_packets,
                     grid);
  b.provenance = BeamProvenance{kappa_t, cavity_alpha};
  return b;
}

fock::FockOperator reduced_state(const ExchangeableBeamState& b, int k,
                                 int dim) {
  if (k < 1) throw std::invalid_argument("reduced_state: k must be >= 1");
  if (k > 2)
    throw CapacityError(
        "reduced_state: joint states beyond two packets are not materialized");
  if (k > b.n_packets)
    throw std::invalid_argument("reduced_state: beam has too few packets");
  if (dim < 2) throw std::invalid_argument("reduced_state: dim must be >= 2");

  fock::FockOperator rho;
  rho.dim = dim;
  rho.modes = k;
  const long size = k == 1 ? dim : long(dim) * dim;
  rho.entries = Eigen::MatrixXcd::Zero(size, size);
  const auto& post = b.posterior;
  for (int j = 0; j < post.grid_size(); ++j) {
    const double w = post.weights()(j);
    if (w == 0.0) continue;
    auto psi = fock::coherent_state(std::polar(b.mag, post.angle(j)), dim);
    if (k == 2) psi = fock::tensor(psi, psi);
    rho.entries.noalias() += w * psi.amplitudes * psi.amplitudes.adjoint();
  }
  return rho;
}

BeamSample sample_realization(const ExchangeableBeamState& b,
                              std::uint64_t seed) {
  Rng rng(seed);
  return sample_realization(b, rng);
}

BeamSample sample_realization(const ExchangeableBeamState& b, Rng& rng) {
  const int k = inference::sample_index(b.posterior, rng);
  const double phi = b.posterior.angle(k);
  return {phi, std::polar(b.mag, phi)};
}

}  // namespace beamlab::beam
