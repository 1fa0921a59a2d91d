#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcdqc/harness/adversary.hpp"
#include "mcdqc/multiclient/protocols.hpp"

namespace mcdqc::harness {

/// Parse failure with the source name and line in the message.
class ParseError : public qsim::Error {
 public:
  using qsim::Error::Error;
};

/// A scenario file after parsing and validation.
///
/// For protocols 1 and 3 `declared` is the n-client scenario as written. For
/// the two-client protocols 2 and 4 the file is written in the usual two-client
/// counting (n=2, m=1: client 1 gives the input and U_c1 as round 1, client 2
/// gives U_c2 as round 1) and `shape` is the equivalent n=2, m=2 chain that
/// the run uses.
struct ScenarioFile {
  std::string name;
  multiclient::ProtocolKind protocol = multiclient::ProtocolKind::P1;
  multiclient::Scenario declared;
  multiclient::Validated shape;
  multiclient::RunOptions options;
  std::vector<AdversarySpec> strategies;  // empty: honest only
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

ScenarioFile parse_scenario_text(const std::string& text, const std::string& source = "<text>");
/// Throws ParseError when the file is missing or malformed, and
/// multiclient::ValidationError / qsim::BudgetError from validation.
ScenarioFile parse_scenario(const std::string& path);

/// Re-derives `shape` after `declared` or `protocol` changed.
void revalidate(ScenarioFile& f);

}  // namespace mcdqc::harness
