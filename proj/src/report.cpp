#include "beamlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace beamlab::experiments {

namespace {

std::string shortest_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{})
    throw std::runtime_error("shortest_double: conversion failed");
  return std::string(buf, res.ptr);
}

const char* kind_name(MeasurementEvent::Kind k) {
  switch (k) {
    case MeasurementEvent::Kind::detector_plus: return "detector_plus";
    case MeasurementEvent::Kind::detector_minus: return "detector_minus";
    case MeasurementEvent::Kind::quadrature: return "quadrature";
  }
  throw std::logic_error("kind_name: unknown event kind");
}

}  // namespace

void MeasurementRecord::append(MeasurementEvent e) {
  if (!events_.empty() && e.packet < events_.back().packet)
    throw std::invalid_argument(
        "MeasurementRecord: packet indices must be nondecreasing");
  if (e.packet < 0)
    throw std::invalid_argument("MeasurementRecord: negative packet index");
  if (!std::isfinite(e.value))
    throw std::invalid_argument("MeasurementRecord: non-finite value");
  events_.push_back(e);
}

nlohmann::json MeasurementRecord::to_json(std::size_t max_events) const {
  nlohmann::json out;
  out["total_events"] = events_.size();
  out["truncated"] = events_.size() > max_events;
  nlohmann::json list = nlohmann::json::array();
  const std::size_t n = std::min(events_.size(), max_events);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = events_[i];
    nlohmann::json je;
    je["packet"] = e.packet;
    je["kind"] = kind_name(e.kind);
    if (e.kind == MeasurementEvent::Kind::quadrature) je["value"] = e.value;
    list.push_back(std::move(je));
  }
  out["events"] = std::move(list);
  return out;
}

bool ExperimentReport::pass() const {
  if (verdicts.empty()) return false;
  for (const auto& [name, ok] : verdicts)
    if (!ok) return false;
  return true;
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json out;
  out["schema_version"] = 1;
  out["conventions"] = {
      {"vacuum_quadrature_variance", 0.5},
      {"entanglement_log_base", 2},
      {"phase_grid", "phi_k = 2*pi*k/M"},
      {"fock_pair_index", "row-major n*dim + m"},
  };
  out["experiment"] = experiment;
  out["parameters"] = parameters;
  out["seed"] = seed;
  out["stats"] = stats;
  out["verdicts"] = verdicts;
  out["pass"] = pass();
  out["warnings"] = warnings;
  nlohmann::json names = nlohmann::json::array();
  for (const auto& t : traces) names.push_back(t.name + ".csv");
  out["trace_files"] = std::move(names);
  return out;
}

void write_csv(const std::filesystem::path& file,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + file.string());
  for (std::size_t c = 0; c < header.size(); ++c)
    out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width != header width");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << shortest_double(row[c]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed");
}

void emit_report(const ExperimentReport& r,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.json", std::ios::binary);
    if (!out)
      throw std::runtime_error("emit_report: cannot open report.json under " +
                               out_dir.string());
    out << r.to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error("emit_report: write failed");
  }
  for (const auto& t : r.traces)
    write_csv(out_dir / (t.name + ".csv"), t.columns, t.rows);
}

}  // namespace beamlab::experiments
