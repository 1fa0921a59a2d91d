#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcdqc/multiclient/bounds.hpp"

namespace mcdqc::harness {

struct Interval {
  double low = 0;
  double high = 0;
};

/// Wilson score interval at 95%.
Interval wilson_interval(std::size_t successes, std::size_t trials);

/// rate <= bound + 3 sqrt(bound (1 - bound) / trials).
bool within_bound(double rate, double bound, std::size_t trials);

struct StrategyStats {
  std::string strategy;
  std::size_t trials = 0;
  std::size_t aborts = 0;
  std::size_t corrupted = 0;  // some client accepted a wrong output
  std::size_t honest_accepts = 0;
  std::size_t totality_violations = 0;  // some clients ERR, others not
  double abort_rate = 0;
  double corruption_rate = 0;
  double honest_accept_rate = 0;
  Interval abort_ci;
  Interval corruption_ci;
  double max_accepted_distance = 0;
  double bound_general = 0;
  bool bound_general_ok = true;
  std::optional<double> bound_two_client;
  std::optional<bool> bound_two_client_ok;
  double mean_wall_ms = 0;  // human format only
};

struct BlindnessEntry {
  std::string a;
  std::string b;
  double distance = 0;
  std::size_t snapshots = 0;
};

struct Report {
  std::string scenario;
  std::string protocol;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string backend;
  std::size_t traps = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool rebroadcast = true;
  multiclient::Epsilons eps;
  std::vector<StrategyStats> strategies;
  std::vector<BlindnessEntry> blindness;
};

enum class ReportFormat { Human, Machine };

ReportFormat parse_format(const std::string& text);

/// Machine format: one key=value per line, fixed key order, reals as %.17g.
std::string emit_report(const Report& r, ReportFormat format);

/// Inverse of the machine format. Throws qsim::Error on malformed input.
Report parse_machine_report(const std::string& text);

}  // namespace mcdqc::harness
