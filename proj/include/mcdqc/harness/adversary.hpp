#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mcdqc/dqc/session.hpp"

namespace mcdqc::harness {

enum class StrategyKind { Honest, AbortFlip, PauliTamper, UnitaryTamper, MeasureResend };

std::string to_string(StrategyKind k);
StrategyKind parse_strategy(const std::string& text);

/// One shipped server strategy. Optional fields act as filters: an unset
/// site, client or round matches every one. Each attack fires at most once
/// per session or channel use.
struct AdversarySpec {
  StrategyKind kind = StrategyKind::Honest;
  std::optional<dqc::Site> site;
  std::optional<std::size_t> client;  // 1-based
  std::optional<std::size_t> round;   // 1-based
  std::string pauli = "uniform";      // fixed string, or a uniformly random non-identity one
  double probability = 1.0;
  qsim::Matrix unitary;               // unitary-tamper: 2x2, on block qubit `qubit`
  std::size_t qubit = 0;
};

/// Short stable description, e.g. "pauli-tamper(site=route,pauli=uniform,p=1)".
std::string describe(const AdversarySpec& spec);

/// Throws qsim::Error for inconsistent parameters (a non-unitary matrix, a
/// probability outside [0, 1], a site on abort-flip other than session).
void check_spec(const AdversarySpec& spec);

std::unique_ptr<dqc::ServerAdversary> make_adversary(const AdversarySpec& spec);

}  // namespace mcdqc::harness
