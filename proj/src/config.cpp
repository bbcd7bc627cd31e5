#include "beamlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "beamlab/errors.hpp"
#include "beamlab/experiments.hpp"

namespace beamlab::cli {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& want) {
  throw UsageError("key '" + key + "': value '" + value + "' is not " + want);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(out))
    bad_value(key, value, "a finite number");
  return out;
}

long parse_long(const std::string& key, const std::string& value) {
  long out = 0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    bad_value(key, value, "an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    bad_value(key, value, "an unsigned 64-bit integer");
  return out;
}

void require(bool ok, const std::string& key, const std::string& want) {
  if (!ok) throw UsageError("key '" + key + "': value out of range, want " + want);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_key(RunConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "seed") {
    cfg.seed = parse_u64(key, value);
    cfg.seed_set = true;
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "trials") {
    const long v = parse_long(key, value);
    require(v >= 1, key, ">= 1");
    cfg.trials = v;
  } else if (key == "dim") {
    const long v = parse_long(key, value);
    require(v >= 2 && v <= 4096, key, "2 .. 4096");
    cfg.dim = int(v);
  } else if (key == "grid") {
    const long v = parse_long(key, value);
    require(v >= 8 && v <= 65536, key, "8 .. 65536");
    cfg.grid = int(v);
  } else if (key == "packets") {
    const long v = parse_long(key, value);
    require(v >= 1, key, ">= 1");
    cfg.packets = v;
  } else if (key == "mag") {
    const double v = parse_double(key, value);
    require(v >= 0.0, key, ">= 0");
    cfg.mag = v;
  } else if (key == "mag_a") {
    const double v = parse_double(key, value);
    require(v >= 0.0, key, ">= 0");
    cfg.mag_a = v;
  } else if (key == "mag_b") {
    const double v = parse_double(key, value);
    require(v >= 0.0, key, ">= 0");
    cfg.mag_b = v;
  } else if (key == "r") {
    const double v = parse_double(key, value);
    require(v >= 0.0, key, ">= 0");
    cfg.r = v;
  } else if (key == "lo_mag") {
    const double v = parse_double(key, value);
    require(v >= 0.0, key, ">= 0");
    cfg.lo_mag = v;
  } else if (key == "lo_packets") {
    const long v = parse_long(key, value);
    require(v >= 0, key, ">= 0");
    cfg.lo_packets = v;
  } else if (key == "beta_re") {
    cfg.beta_re = parse_double(key, value);
  } else if (key == "beta_im") {
    cfg.beta_im = parse_double(key, value);
  } else if (key == "mode") {
    if (value != "shared" && value != "independent" && value != "offset")
      bad_value(key, value, "one of shared | independent | offset");
    cfg.mode = value;
  } else if (key == "delta") {
    cfg.delta = parse_double(key, value);
  } else if (key == "tolerance") {
    const double v = parse_double(key, value);
    require(v > 0.0, key, "> 0");
    cfg.tolerance = v;
  } else if (key == "test_level") {
    const double v = parse_double(key, value);
    require(v > 0.0 && v < 1.0, key, "in (0, 1)");
    cfg.test_level = v;
  } else if (key == "r3_threshold") {
    const double v = parse_double(key, value);
    require(v >= 0.0 && v <= 1.0, key, "in [0, 1]");
    cfg.r3_threshold = v;
  } else if (key == "r10_threshold") {
    const double v = parse_double(key, value);
    require(v >= 0.0 && v <= 1.0, key, "in [0, 1]");
    cfg.r10_threshold = v;
  } else if (key == "target_fraction") {
    const double v = parse_double(key, value);
    require(v > 0.0 && v <= 1.0, key, "in (0, 1]");
    cfg.target_fraction = v;
  } else if (key == "min_pass_rate") {
    const double v = parse_double(key, value);
    require(v > 0.0 && v <= 1.0, key, "in (0, 1]");
    cfg.min_pass_rate = v;
  } else if (key == "fidelity_tol") {
    const double v = parse_double(key, value);
    require(v > 0.0, key, "> 0");
    cfg.fidelity_tol = v;
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& file,
                       const std::map<std::string, bool>& already_set) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file " + file.string());
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) +
                       ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) +
                                      ": empty key");
    const auto it = already_set.find(key);
    if (it != already_set.end() && it->second) {
      RunConfig scratch = cfg;  // flag wins, but the file value must parse
      apply_key(scratch, key, value);
    } else {
      apply_key(cfg, key, value);
    }
  }
}

namespace {

using namespace beamlab::experiments;

int finish(ExperimentReport rep, const RunConfig& cfg) {
  emit_report(rep, cfg.out_dir);
  for (const auto& [name, ok] : rep.verdicts)
    std::cout << "verdict " << name << ": " << (ok ? "pass" : "FAIL") << '\n';
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << '\n';
  const bool ok = rep.pass();
  std::cout << (ok ? "RESULT: PASS" : "RESULT: FAIL") << " ("
            << (cfg.out_dir / "report.json").string() << ")\n";
  return ok ? exit_ok : exit_verdict_failure;
}

int run_identity(const RunConfig& cfg) {
  IdentityParams p;
  if (cfg.smoke) p.mags = {1.0};
  if (cfg.mag) p.mags = {*cfg.mag};
  if (cfg.dim) p.dim = *cfg.dim;
  if (cfg.grid) p.grid = *cfg.grid;
  if (cfg.tolerance) p.tolerance = *cfg.tolerance;
  return finish(run_identity_check(p), cfg);
}

int run_molmer_cmd(const RunConfig& cfg) {
  MolmerParams p;
  if (cfg.smoke) {
    p.trials = 150;
    p.n_packets = 12;
    p.grid = 64;
  }
  if (cfg.mag_a) p.mag_a = *cfg.mag_a;
  if (cfg.mag_b) p.mag_b = *cfg.mag_b;
  if (cfg.packets) p.n_packets = *cfg.packets;
  if (cfg.trials) p.trials = *cfg.trials;
  if (cfg.grid) p.grid = *cfg.grid;
  if (cfg.r3_threshold) p.r3_threshold = *cfg.r3_threshold;
  if (cfg.r10_threshold) p.r10_threshold = *cfg.r10_threshold;
  return finish(run_molmer(p, cfg.seed), cfg);
}

int run_lock(const RunConfig& cfg) {
  PhaseLockParams p;
  if (cfg.smoke) {
    p.trials = 80;
    p.n_packets = 8;
    p.grid = 64;
  }
  if (cfg.mag) p.mag = *cfg.mag;
  if (cfg.packets) p.n_packets = *cfg.packets;
  if (cfg.trials) p.trials = *cfg.trials;
  if (cfg.grid) p.grid = *cfg.grid;
  if (cfg.test_level) p.test_level = *cfg.test_level;
  if (cfg.min_pass_rate) p.min_pass_rate = *cfg.min_pass_rate;
  return finish(run_phase_locking(p, cfg.seed), cfg);
}

int run_separability(const RunConfig& cfg) {
  SeparabilityParams p;
  if (cfg.smoke) p.dim = 10;
  if (cfg.r) p.r = *cfg.r;
  if (cfg.dim) p.dim = *cfg.dim;
  if (cfg.tolerance) p.tolerance = *cfg.tolerance;
  return finish(check_separability(p), cfg);
}

int run_distill(const RunConfig& cfg) {
  DistillationParams p;
  if (cfg.smoke) {
    p.trials = 20;
    p.dim = 10;
    p.grid = 128;
    p.n_lo_sweep = {0, 2};
  }
  if (cfg.r) p.r = *cfg.r;
  if (cfg.lo_mag) p.lo_mag = *cfg.lo_mag;
  if (cfg.lo_packets) p.n_lo = *cfg.lo_packets;
  if (cfg.dim) p.dim = *cfg.dim;
  if (cfg.trials) p.trials = *cfg.trials;
  if (cfg.grid) p.grid = *cfg.grid;
  if (cfg.target_fraction) p.target_fraction = *cfg.target_fraction;
  return finish(run_distillation(p, cfg.seed), cfg);
}

int run_teleport_cmd(const RunConfig& cfg) {
  TeleportParams p;
  if (cfg.smoke) {
    p.trials = 250;
    p.dim = 10;
    p.fidelity_tol = 0.05;
    p.no_signalling_tol = 0.1;
  }
  if (cfg.r) p.r = *cfg.r;
  if (cfg.beta_re) p.beta = {*cfg.beta_re, p.beta.imag()};
  if (cfg.beta_im) p.beta = {p.beta.real(), *cfg.beta_im};
  if (cfg.mode) {
    if (*cfg.mode == "shared") p.mode = ReferenceMode::shared;
    if (*cfg.mode == "independent") p.mode = ReferenceMode::independent;
    if (*cfg.mode == "offset") p.mode = ReferenceMode::offset;
  }
  if (cfg.delta) p.delta = *cfg.delta;
  if (cfg.trials) p.trials = *cfg.trials;
  if (cfg.dim) p.dim = *cfg.dim;
  if (cfg.fidelity_tol) p.fidelity_tol = *cfg.fidelity_tol;
  return finish(run_teleportation(p, cfg.seed), cfg);
}

}  // namespace

int run_command(const RunConfig& cfg) {
  if (!cfg.seed_set) throw UsageError("--seed is required");
  try {
    if (cfg.experiment == "identity-check") return run_identity(cfg);
    if (cfg.experiment == "molmer") return run_molmer_cmd(cfg);
    if (cfg.experiment == "phase-lock") return run_lock(cfg);
    if (cfg.experiment == "separability") return run_separability(cfg);
    if (cfg.experiment == "distill") return run_distill(cfg);
    if (cfg.experiment == "teleport") return run_teleport_cmd(cfg);
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << '\n';
    return exit_capacity;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return exit_capacity;
  }
  throw UsageError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace beamlab::cli
