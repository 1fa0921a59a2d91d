#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mcdqc/acframe/envelope.hpp"

namespace mcdqc::acframe {

using SystemFactory = std::function<SystemPtr()>;

/// A non-adaptive distinguisher: prepares its inputs in the world, feeds them
/// to the system and returns every envelope the system sent back. Qubits left
/// in the distinguisher's own memory (owner kDistinguisher) are part of the
/// view alongside the returned qubit handles.
using Strategy = std::function<std::vector<Envelope>(World&, System&)>;

inline constexpr const char* kDistinguisher = "D";

/// Joint classical/quantum view of one run: a label built from the classical
/// content of the observed envelopes and the handles of the qubits the
/// distinguisher holds at the end.
struct View {
  std::string label;
  std::vector<qsim::QubitId> held;
};

View collect_view(const World& w, const std::vector<Envelope>& observed);

/// Sub-normalised states per classical label, summed over every branch.
using ViewDistribution = std::map<std::string, qsim::Matrix>;

/// Runs the system under every coin path and accumulates p(path) * rho_view.
/// Each transcript is checked structurally along the way.
ViewDistribution exact_view(const SystemFactory& make, const Strategy& strategy,
                            std::size_t max_paths = 2'000'000);

/// 1/2 sum over labels of the trace norm of the difference. A label missing
/// on one side counts in full, which makes ERR orthogonal to any state.
double view_distance(const ViewDistribution& a, const ViewDistribution& b);

/// Throws Error if the two systems expose different interfaces.
void require_same_signature(const System& a, const System& b);

/// Exact distinguishing advantage of a fixed non-adaptive strategy.
double exact_advantage(const SystemFactory& a, const SystemFactory& b, const Strategy& strategy,
                       std::size_t max_paths = 2'000'000);

struct McAdvantage {
  double estimate = 0;
  double half_width = 0;  // 95% normal-approximation half-width
  std::size_t trials = 0;
};

/// Sampled estimate. Even trials run system A and odd trials system B; held
/// qubits are measured in the computational basis. The first half of each
/// side trains a best-response guess (A iff seen more often under A), the
/// second half measures P(guess A | A) - P(guess A | B).
McAdvantage mc_advantage(const SystemFactory& a, const SystemFactory& b, const Strategy& strategy,
                         std::size_t trials, std::uint64_t seed);

}  // namespace mcdqc::acframe
