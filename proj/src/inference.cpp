#include "beamlab/inference.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "beamlab/beam.hpp"
#include "beamlab/errors.hpp"

namespace beamlab::inference {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

PhasePosterior::PhasePosterior(Eigen::VectorXd w) : w_(std::move(w)) {
  if (w_.size() < 1)
    throw std::invalid_argument("PhasePosterior: empty weight vector");
  if ((w_.array() < 0.0).any())
    throw std::invalid_argument("PhasePosterior: negative weight");
  const double total = w_.sum();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::invalid_argument("PhasePosterior: weights must sum to > 0");
  w_ /= total;
}

PhasePosterior PhasePosterior::uniform(int grid_size) {
  if (grid_size < 1)
    throw std::invalid_argument("PhasePosterior: grid_size must be >= 1");
  return PhasePosterior(
      Eigen::VectorXd::Constant(grid_size, 1.0 / grid_size));
}

PhasePosterior PhasePosterior::delta(int grid_size, int index) {
  if (grid_size < 1)
    throw std::invalid_argument("PhasePosterior: grid_size must be >= 1");
  if (index < 0 || index >= grid_size)
    throw std::invalid_argument("PhasePosterior: delta index out of range");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(grid_size);
  w(index) = 1.0;
  return PhasePosterior(std::move(w));
}

PhasePosterior PhasePosterior::from_weights(Eigen::VectorXd weights) {
  return PhasePosterior(std::move(weights));
}

double PhasePosterior::angle(int k) const {
  if (k < 0 || k >= grid_size())
    throw std::invalid_argument("PhasePosterior: angle index out of range");
  return kTwoPi * k / grid_size();
}

PhasePosterior PhasePosterior::bayes_update(
    const Eigen::VectorXd& likelihood) const {
  if (likelihood.size() != w_.size())
    throw std::invalid_argument("bayes_update: likelihood size mismatch");
  if ((likelihood.array() < 0.0).any() || !likelihood.allFinite())
    throw std::invalid_argument("bayes_update: likelihood must be >= 0");
  Eigen::VectorXd w = w_.cwiseProduct(likelihood);
  if (!(w.sum() > 0.0))
    throw ImpossibleEvidenceError(
        "bayes_update: evidence has zero probability under the prior");
  return PhasePosterior(std::move(w));
}

int PhasePosterior::mode_index() const {
  int best = 0;
  for (int k = 1; k < grid_size(); ++k)
    if (w_(k) > w_(best)) best = k;
  return best;
}

CircularStats circular_stats(const PhasePosterior& p) {
  std::complex<double> z = 0.0;
  for (int k = 0; k < p.grid_size(); ++k)
    z += p.weights()(k) * std::polar(1.0, p.angle(k));
  const double r = std::min(std::abs(z), 1.0);
  double mean = 0.0;
  if (r > 0.0) {
    mean = std::arg(z);
    if (mean < 0.0) mean += kTwoPi;
    if (mean >= kTwoPi) mean -= kTwoPi;
  }
  const double cstd = r > 0.0 ? std::sqrt(-2.0 * std::log(r))
                              : std::numeric_limits<double>::infinity();
  return {mean, r, cstd};
}

int sample_index(const PhasePosterior& p, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int k = 0; k < p.grid_size(); ++k) {
    acc += p.weights()(k);
    if (u < acc) return k;
  }
  return p.grid_size() - 1;
}

void write_posterior_trace(std::ostream& out,
                           const std::vector<PhasePosterior>& steps) {
  out << "step,phi,weight\n";
  out << std::setprecision(17);
  for (std::size_t s = 0; s < steps.size(); ++s)
    for (int k = 0; k < steps[s].grid_size(); ++k)
      out << s << ',' << steps[s].angle(k) << ',' << steps[s].weights()(k)
          << '\n';
}

beam::ExchangeableBeamState condition_beam(const beam::ExchangeableBeamState& b,
                                           const Eigen::VectorXd& likelihood,
                                           long measured) {
  if (measured < 0 || measured > b.n_packets)
    throw std::invalid_argument(
        "condition_beam: measured packet count out of range");
  beam::ExchangeableBeamState out = b;
  out.posterior = b.posterior.bayes_update(likelihood);
  out.n_packets = b.n_packets - measured;
  return out;
}

}  // namespace beamlab::inference
