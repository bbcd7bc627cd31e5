#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "beamlab/report.hpp"

namespace beamlab::experiments {

// mixture: draw the latent phase(s) per trial from the beam's posterior.
// fixed: pin them to fixed_value (used by equivalence checks and oracles).
enum class PhaseMode { mixture, fixed };

// ---- number-mixture / phase-average identity --------------------------

struct IdentityParams {
  std::vector<double> mags = {0.5, 1.0, 2.0};
  int dim = 0;  // 0: per-magnitude default ceil(m^2 + 6m + 10)
  int grid = 0;  // 0: 2 * dim
  double tolerance = 1e-10;
};
ExperimentReport run_identity_check(const IdentityParams& p);

// ---- interference of two independent beams -----------------------------

struct MolmerParams {
  double mag_a = 1.0;
  double mag_b = 1.0;
  long n_packets = 25;
  long trials = 1000;
  int grid = 256;
  PhaseMode phase_mode = PhaseMode::mixture;
  double fixed_delta = 0.0;
  int trace_detections = 20;   // R recorded after 1..this many detections
  double r3_threshold = 0.5;   // median R after 3 detections
  double r10_threshold = 0.9;  // median R after 10 detections
};
ExperimentReport run_molmer(const MolmerParams& p, std::uint64_t seed);

// ---- phase locking without a phase --------------------------------------

struct PhaseLockParams {
  double mag = 2.0;
  long n_packets = 20;
  long trials = 500;
  int grid = 256;
  double test_level = 0.01;
  double min_pass_rate = 0.95;
  int phase_bins = 8;  // for the phi0-dependence diagnostics
};
ExperimentReport run_phase_locking(const PhaseLockParams& p,
                                   std::uint64_t seed);

// ---- separability of the phase-averaged squeezed pair -------------------

struct SeparabilityParams {
  double r = 0.4;
  int dim = 14;
  double tolerance = 1e-10;
  double pure_npt_bound = -0.01;  // pure-state PT floor must sit below this
};
ExperimentReport check_separability(const SeparabilityParams& p);

// ---- entanglement distillation with local-oscillator light --------------

struct DistillationParams {
  double r = 0.3;
  double lo_mag = 2.0;  // |alpha'| per local-oscillator packet
  long n_lo = 8;        // measured packets at full strength
  int dim = 12;
  long trials = 200;
  int grid = 256;
  double target_fraction = 0.9;  // of the pure-state benchmark 2r/ln2
  std::vector<long> n_lo_sweep = {0, 1, 2, 4};  // plus n_lo; monotonicity
};
ExperimentReport run_distillation(const DistillationParams& p,
                                  std::uint64_t seed);

// ---- teleportation without a shared absolute phase ----------------------

enum class ReferenceMode { shared, independent, offset };

struct TeleportParams {
  double r = 0.35;
  std::complex<double> beta = {1.0, 0.0};
  ReferenceMode mode = ReferenceMode::shared;
  double delta = 0.0;  // Bob's reference offset in offset mode
  long trials = 10000;
  int dim = 24;
  double gain = 1.0;
  PhaseMode phase_mode = PhaseMode::mixture;
  double fidelity_tol = 0.01;  // vs the closed-form benchmark (shared mode)
  int phase_bins = 8;
  double anova_level = 0.01;
  double no_signalling_tol = 0.02;
};
ExperimentReport run_teleportation(const TeleportParams& p,
                                   std::uint64_t seed);

}  // namespace beamlab::experiments
