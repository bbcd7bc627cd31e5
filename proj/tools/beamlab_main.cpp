#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamlab/config.hpp"

namespace cli = beamlab::cli;

namespace {

// Every value flag lands here as raw text and flows through the same
// validator as config-file keys; the map also records what the command line
// set so file values cannot override it.
struct FlagBag {
  std::map<std::string, std::string> values;
  std::string config_file;
};

void add_flag(CLI::App* cmd, FlagBag& bag, const std::string& flag,
              const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&bag, key](const std::string& v) { bag.values[key] = v; }, help);
}

void add_common(CLI::App* cmd, FlagBag& bag, bool& smoke) {
  add_flag(cmd, bag, "--seed", "seed", "RNG seed (required)");
  add_flag(cmd, bag, "--out", "out", "output directory for report.json + CSVs");
  add_flag(cmd, bag, "--trials", "trials", "Monte Carlo repetitions");
  add_flag(cmd, bag, "--dim", "dim", "photon-number truncation per mode");
  add_flag(cmd, bag, "--grid", "grid", "phase grid points");
  cmd->add_option("--config", bag.config_file,
                  "key = value file; flags take precedence");
  cmd->add_flag("--smoke", smoke, "sub-second preset for CI");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-mixture laser beam laboratory"};
  app.require_subcommand(1);

  FlagBag bag;
  bool smoke = false;

  auto* identity = app.add_subcommand(
      "identity-check",
      "phase-averaged coherent state vs photon-number mixture");
  add_common(identity, bag, smoke);
  add_flag(identity, bag, "--mag", "mag", "coherent amplitude |alpha|");
  add_flag(identity, bag, "--tolerance", "tolerance",
           "trace-distance pass bound");

  auto* molmer = app.add_subcommand(
      "molmer", "interference of two independent beams, posterior tracking");
  add_common(molmer, bag, smoke);
  add_flag(molmer, bag, "--mag-a", "mag_a", "amplitude of beam A per packet");
  add_flag(molmer, bag, "--mag-b", "mag_b", "amplitude of beam B per packet");
  add_flag(molmer, bag, "--packets", "packets", "detection windows per trial");
  add_flag(molmer, bag, "--r3-threshold", "r3_threshold",
           "median resultant bound after 3 windows");
  add_flag(molmer, bag, "--r10-threshold", "r10_threshold",
           "median resultant bound after 10 windows");

  auto* lock = app.add_subcommand(
      "phase-lock", "first window locks the relative phase of later ones");
  add_common(lock, bag, smoke);
  add_flag(lock, bag, "--mag", "mag", "amplitude per packet");
  add_flag(lock, bag, "--packets", "packets", "windows per trial");
  add_flag(lock, bag, "--test-level", "test_level",
           "per-trial goodness-of-fit level");
  add_flag(lock, bag, "--min-pass-rate", "min_pass_rate",
           "required fraction of locked trials");

  auto* sep = app.add_subcommand(
      "separability", "phase-averaged squeezed pair vs its number mixture");
  add_common(sep, bag, smoke);
  add_flag(sep, bag, "--r", "r", "squeezing parameter");
  add_flag(sep, bag, "--tolerance", "tolerance", "trace-distance pass bound");

  auto* distill = app.add_subcommand(
      "distill", "local-oscillator packets concentrate pair entanglement");
  add_common(distill, bag, smoke);
  add_flag(distill, bag, "--r", "r", "squeezing parameter");
  add_flag(distill, bag, "--lo-mag", "lo_mag",
           "oscillator amplitude per packet");
  add_flag(distill, bag, "--lo-packets", "lo_packets",
           "measured oscillator packets");
  add_flag(distill, bag, "--target-fraction", "target_fraction",
           "required fraction of the pure-state entanglement");

  auto* teleport = app.add_subcommand(
      "teleport", "continuous-variable teleportation of a coherent state");
  add_common(teleport, bag, smoke);
  add_flag(teleport, bag, "--r", "r", "resource squeezing");
  add_flag(teleport, bag, "--beta-re", "beta_re", "input amplitude, real part");
  add_flag(teleport, bag, "--beta-im", "beta_im",
           "input amplitude, imaginary part");
  add_flag(teleport, bag, "--mode", "mode",
           "reference relation: shared | independent | offset");
  add_flag(teleport, bag, "--delta", "delta", "reference offset (offset mode)");
  add_flag(teleport, bag, "--fidelity-tol", "fidelity_tol",
           "allowed gap to the closed-form benchmark");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::exit_ok : cli::exit_usage;
  }

  try {
    cli::RunConfig cfg;
    cfg.experiment = app.get_subcommands().front()->get_name();
    cfg.smoke = smoke;
    std::map<std::string, bool> already_set;
    for (const auto& [key, value] : bag.values) {
      cli::apply_key(cfg, key, value);
      already_set[key] = true;
    }
    if (!bag.config_file.empty())
      cli::apply_config_file(cfg, bag.config_file, already_set);
    return cli::run_command(cfg);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return cli::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::exit_capacity;
  }
}
