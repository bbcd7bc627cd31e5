#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "beamlab/fock.hpp"
#include "beamlab/inference.hpp"

namespace beamlab::beam {

// Where a beam's packet amplitude came from, when it was derived from a
// cavity field rather than given directly.
struct BeamProvenance {
  double kappa_t;                     // leakage-rate x window product
  std::complex<double> cavity_alpha;  // cavity amplitude at phase 0
};

// A propagating beam of n_packets identical wave packets: packet magnitude
// |alpha0|, one shared phase distributed per the posterior. The joint state
// over all packets is never materialized; reductions to one or two packets
// are computed on demand.
struct ExchangeableBeamState {
  double mag = 0.0;
  long n_packets = 0;
  inference::PhasePosterior posterior = inference::PhasePosterior::uniform(8);
  std::optional<BeamProvenance> provenance;
};

// sqrt(kappa_t) * alpha * e^{i phi}
std::complex<double> packet_amplitude(double kappa_t,
                                      std::complex<double> alpha, double phi);

ExchangeableBeamState make_beam(double mag, long n_packets, int grid = 256);
ExchangeableBeamState beam_from_cavity(double kappa_t,
                                       std::complex<double> cavity_alpha,
                                       long n_packets, int grid = 256);

// Density operator of k packets (k = 1 or 2), the posterior-weighted phase
// quadrature of coherent-state projectors. k > 2 is a capacity error,
// k > n_packets an invalid argument.
fock::FockOperator reduced_state(const ExchangeableBeamState& b, int k,
                                 int dim);

struct BeamSample {
  double phi;
  std::complex<double> packet_label;  // mag * e^{i phi}
};

// One realization of the mixture: a single phase draw shared by all packets.
BeamSample sample_realization(const ExchangeableBeamState& b,
                              std::uint64_t seed);
BeamSample sample_realization(const ExchangeableBeamState& b, Rng& rng);

}  // namespace beamlab::beam

namespace beamlab::inference {

// Absorb a phase likelihood from measuring `measured` packets: the posterior
// updates, the packet count drops. Defined here (declared with the beam type)
// but owned by the inference layer.
beam::ExchangeableBeamState condition_beam(const beam::ExchangeableBeamState& b,
                                           const Eigen::VectorXd& likelihood,
                                           long measured);

}  // namespace beamlab::inference
