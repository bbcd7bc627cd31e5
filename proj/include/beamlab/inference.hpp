#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "beamlab/rng.hpp"

namespace beamlab::inference {

struct CircularStats {
  double mean_direction;    // in [0, 2*pi)
  double resultant_length;  // R in [0, 1]
  double circular_std;      // sqrt(-2 ln R), +inf at R = 0
};

// Discrete distribution over phase on the uniform grid phi_k = 2*pi*k/M.
// Weights are nonnegative and renormalized to sum to one on construction and
// after every update; the grid is the model, not an approximation knob.
class PhasePosterior {
 public:
  static PhasePosterior uniform(int grid_size);
  static PhasePosterior delta(int grid_size, int index);
  static PhasePosterior from_weights(Eigen::VectorXd weights);

  int grid_size() const { return static_cast<int>(w_.size()); }
  double angle(int k) const;
  const Eigen::VectorXd& weights() const { return w_; }

  // pointwise multiply by a length-M likelihood and renormalize;
  // throws ImpossibleEvidenceError if every weight vanishes
  PhasePosterior bayes_update(const Eigen::VectorXd& likelihood) const;

  int mode_index() const;  // argmax, lowest index on ties
  double mode_angle() const { return angle(mode_index()); }

 private:
  explicit PhasePosterior(Eigen::VectorXd w);
  Eigen::VectorXd w_;
};

CircularStats circular_stats(const PhasePosterior& p);

// inverse-CDF draw of a grid index
int sample_index(const PhasePosterior& p, Rng& rng);

// long-format CSV: header "step,phi,weight", one row per (step, grid point)
void write_posterior_trace(std::ostream& out,
                           const std::vector<PhasePosterior>& steps);

}  // namespace beamlab::inference
