#pragma once

#include <cstdint>
#include <optional>

#include "mcdqc/harness/report.hpp"
#include "mcdqc/harness/scenario_file.hpp"

namespace mcdqc::harness {

/// Command-line values that replace the file's [run] entries.
struct TrialOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<dqc::Backend> backend;
  std::optional<std::size_t> traps;
  std::optional<bool> rebroadcast;
};

void apply_overrides(ScenarioFile& f, const TrialOverrides& o);

/// An accepted output farther than this from the honest one counts as corrupted.
inline constexpr double kCorruptionDistance = 1e-6;

enum class TrialClass { HonestAccept, Abort, Corrupted };

struct TrialResult {
  TrialClass kind = TrialClass::HonestAccept;
  bool partial_abort = false;
  double max_distance = 0;  // over accepted outputs
  double wall_ms = 0;
};

/// One seeded run of the file's protocol against one strategy, compared with
/// the direct evaluation of the global circuit.
TrialResult run_one_trial(const ScenarioFile& f, const AdversarySpec& spec, std::uint64_t seed);

/// Trial t uses SeededCoins(derive_seed(seed, t)); trials run in parallel
/// and are reduced in trial order. An empty strategy list runs the honest
/// server only. Internal invariant failures propagate.
Report run_trials(const ScenarioFile& f, const TrialOverrides& o = {});

}  // namespace mcdqc::harness
