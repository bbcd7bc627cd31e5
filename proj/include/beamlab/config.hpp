#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace beamlab::cli {

// Exit codes shared by the binary and its tests.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verdict_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_capacity = 3;

// A config or flag value failed validation, or an unknown key appeared.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat bag of run settings. Optionals stay empty unless the user set the key
// (file or flag), so each experiment keeps its own documented defaults.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::filesystem::path out_dir = ".";
  bool smoke = false;

  std::optional<long> trials;
  std::optional<int> dim;
  std::optional<int> grid;
  std::optional<long> packets;
  std::optional<double> mag;
  std::optional<double> mag_a;
  std::optional<double> mag_b;
  std::optional<double> r;
  std::optional<double> lo_mag;
  std::optional<long> lo_packets;
  std::optional<double> beta_re;
  std::optional<double> beta_im;
  std::optional<std::string> mode;  // shared | independent | offset
  std::optional<double> delta;
  std::optional<double> tolerance;
  std::optional<double> test_level;
  std::optional<double> r3_threshold;
  std::optional<double> r10_threshold;
  std::optional<double> target_fraction;
  std::optional<double> min_pass_rate;
  std::optional<double> fidelity_tol;
};

// Parse "key = value" lines ('#' comments, blank lines allowed). Unknown keys
// and out-of-range values throw UsageError naming the key. Keys already set
// on the command line win over file values; pass those in `already_set`.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& file,
                       const std::map<std::string, bool>& already_set);

// Set one key from text with validation; shared by file and flag paths.
void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value);

// Run the configured experiment, write artifacts, return the process exit
// code (exit_ok iff every verdict passed).
int run_command(const RunConfig& cfg);

}  // namespace beamlab::cli
