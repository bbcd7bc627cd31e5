#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace beamlab::experiments {

// One recorded event: a photon landing in a detector, or a continuous
// quadrature outcome. Packet indices must be nondecreasing; values finite.
struct MeasurementEvent {
  long packet = 0;
  enum class Kind { detector_plus, detector_minus, quadrature } kind =
      Kind::detector_plus;
  double value = 0.0;  // quadrature outcome; unused for detector clicks
};

class MeasurementRecord {
 public:
  void append(MeasurementEvent e);
  const std::vector<MeasurementEvent>& events() const { return events_; }
  nlohmann::json to_json(std::size_t max_events = 200) const;

 private:
  std::vector<MeasurementEvent> events_;
};

// Columnar trace destined for a CSV file next to the JSON report.
struct TraceTable {
  std::string name;  // file stem, e.g. "molmer_posterior"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Everything one experiment run reports. Serialization is deterministic:
// object keys are sorted, doubles print shortest-round-trip, and nothing
// time- or host-dependent is stored, so identical (config, seed) pairs
// produce byte-identical files.
struct ExperimentReport {
  std::string experiment;
  nlohmann::json parameters;
  std::uint64_t seed = 0;
  nlohmann::json stats;
  std::map<std::string, bool> verdicts;
  std::vector<std::string> warnings;
  std::vector<TraceTable> traces;  // written as CSV, not into the JSON

  bool pass() const;
  nlohmann::json to_json() const;  // adds schema_version and conventions
};

// report.json plus one <name>.csv per trace, all deterministic
void emit_report(const ExperimentReport& r,
                 const std::filesystem::path& out_dir);

void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace beamlab::experiments
