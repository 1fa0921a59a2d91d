#pragma once

#include <optional>
#include <vector>

#include "mcdqc/multiclient/wiring.hpp"

namespace mcdqc::multiclient {

struct GlobalOutput {
  /// Reduced output of each client; empty for clients that expect none.
  std::vector<std::optional<qsim::Matrix>> per_client;
  /// All outputs together, clients in order, labels in output order.
  qsim::Matrix joint;
};

/// Direct evaluation of the wired global circuit with no protocol around it.
GlobalOutput evaluate_global(const Validated& v);

}  // namespace mcdqc::multiclient
