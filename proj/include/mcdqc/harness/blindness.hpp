#pragma once

#include <string>
#include <vector>

#include "mcdqc/harness/report.hpp"
#include "mcdqc/harness/scenario_file.hpp"

namespace mcdqc::harness {

/// The two scenarios differ in something the server is allowed to learn.
class SizeProfileError : public qsim::Error {
 public:
  using qsim::Error::Error;
};

/// Protocol, n, m and, per client and round, qubit and gate counts.
struct SizeProfile {
  std::string protocol;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<std::size_t>> qubits;  // [client][round]
  std::vector<std::vector<std::size_t>> gates;

  bool operator==(const SizeProfile&) const = default;
  std::string str() const;
};

SizeProfile size_profile(const ScenarioFile& f);

/// What the server holds during one honest run: its classical view (one line
/// per envelope at a server or leak port) and, at every point where it holds
/// quantum data, the key-averaged state of everything it holds.
struct ServerView {
  std::vector<std::string> classical;
  std::vector<qsim::Matrix> snapshots;
};

/// Honest run on the ideal backend. The key average of a held block is its
/// Pauli twirl, since every key distribution used for server-held data is
/// invariant under multiplication by a uniform Pauli.
ServerView server_view(const ScenarioFile& f);

struct BlindnessResult {
  double distance = 0;  // max over snapshots; 1 if the classical views differ
  std::size_t snapshots = 0;
  bool classical_equal = true;
};

/// Throws SizeProfileError when the size profiles differ.
BlindnessResult blindness_check(const ScenarioFile& a, const ScenarioFile& b);

}  // namespace mcdqc::harness
