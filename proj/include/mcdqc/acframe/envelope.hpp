#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mcdqc/authcode/qas.hpp"
#include "mcdqc/qsim/coins.hpp"
#include "mcdqc/qsim/gates.hpp"
#include "mcdqc/qsim/substrate.hpp"

namespace mcdqc::acframe {

/// (party, port), e.g. ("A", "qin") or ("C2", "out").
struct InterfaceId {
  std::string party;
  std::string port;

  auto operator<=>(const InterfaceId&) const = default;
  std::string str() const { return party + "." + port; }
};

enum class EnvelopeKind { ClassicalBits, QubitHandles, ControlBit, KeyValue, LeakRecord, Computation, Error };

std::string to_string(EnvelopeKind kind);

/// Size-only leakage. The schema has no room for keys, gate identities or
/// input data, which is the point.
struct LeakRecord {
  std::size_t client = 0;
  std::size_t round = 0;
  std::size_t qubits = 0;
  std::size_t gates = 0;
  std::size_t message_length = 0;
  bool sent = false;

  bool operator==(const LeakRecord&) const = default;
  std::string str() const;
};

struct KeyValue {
  std::vector<authcode::AuthKey> keys;
  std::string digest() const;
};

/// psi: what a client hands to a DQC resource.
struct Computation {
  qsim::Circuit circuit;               // single-session program over `inputs`
  std::vector<qsim::QubitId> inputs;   // plaintext data handles (S^bv, S^n-bv)
  std::vector<qsim::Circuit> rounds;   // per-round programs (S^n-bv)
  std::size_t client = 0;
  std::size_t round = 0;
  // S^bb: keys of the incoming blocks, in block order, and the data positions
  // of each output group; each output group is re-encoded under a fresh key.
  std::vector<authcode::AuthKey> in_keys;
  std::vector<std::vector<std::size_t>> out_groups;
  std::size_t traps = 1;
};

using Payload = std::variant<std::monostate, std::vector<std::uint8_t>, std::vector<qsim::QubitId>, bool,
                             KeyValue, LeakRecord, Computation, qsim::ErrMarker>;

struct Envelope {
  EnvelopeKind kind = EnvelopeKind::ControlBit;
  Payload payload;
  InterfaceId source;
  InterfaceId destination;
  std::uint64_t step = 0;

  const std::vector<qsim::QubitId>& qubits() const;
  const std::vector<std::uint8_t>& bits() const;
  bool control() const;
  const KeyValue& key() const;
  const LeakRecord& leak() const;
  const Computation& computation() const;
  bool is_error() const { return kind == EnvelopeKind::Error; }
};

Envelope make_bits(InterfaceId src, InterfaceId dst, std::vector<std::uint8_t> bits);
Envelope make_qubits(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs);
Envelope make_control(InterfaceId src, InterfaceId dst, bool bit);
Envelope make_key(InterfaceId src, InterfaceId dst, KeyValue key);
Envelope make_leak(InterfaceId src, InterfaceId dst, LeakRecord leak);
Envelope make_computation(InterfaceId src, InterfaceId dst, Computation c);
Envelope make_error(InterfaceId src, InterfaceId dst);

/// Short payload description used in transcript dumps.
std::string payload_digest(const Envelope& e);

/// Ordered record of every emitted envelope.
class Transcript {
 public:
  void record(const Envelope& e) { records_.push_back(e); }
  const std::vector<Envelope>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  /// One line per record: "step source destination kind digest".
  std::string dump() const;
  /// Records whose source or destination party is `party`.
  std::vector<Envelope> view_of(const std::string& party) const;
  /// Throws InvariantError if anything other than a LeakRecord left a leak
  /// port, or if step counters do not increase.
  void check_structure() const;

 private:
  std::vector<Envelope> records_;
};

/// Shared state of one run: the substrate, the coin source and the transcript.
struct World {
  explicit World(qsim::Coins& c, Transcript* t = nullptr) : coins(&c), transcript(t) {}

  qsim::QuantumSubstrate substrate;
  qsim::Coins* coins;
  Transcript* transcript;
  std::uint64_t step = 0;

  /// Stamps the step counter, checks that carried qubits are held by the
  /// source party, and records the envelope.
  Envelope emit(Envelope e);
  /// Hands the qubits to the source party and emits them.
  Envelope emit_qubits(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs);
  /// emit_qubits, after which the destination party holds the qubits.
  Envelope transfer(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs);
};

/// A system with outside interfaces (and, for converters, inside interfaces
/// that bind to resource interfaces of the same name).
class System {
 public:
  virtual ~System() = default;
  virtual std::string name() const = 0;
  virtual std::vector<InterfaceId> outside() const = 0;
  virtual std::vector<InterfaceId> inside() const { return {}; }
  /// Handle one envelope addressed to one of this system's interfaces.
  virtual std::vector<Envelope> receive(World& w, const Envelope& in) = 0;
  /// Start-of-run hook (filters emit their pinned bits here).
  virtual std::vector<Envelope> activate(World&) { return {}; }
};

using SystemPtr = std::unique_ptr<System>;

}  // namespace mcdqc::acframe
