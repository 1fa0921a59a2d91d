#include "mcdqc/acframe/envelope.hpp"

#include <sstream>

namespace mcdqc::acframe {

using qsim::Error;
using qsim::InvariantError;

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::ClassicalBits: return "bits";
    case EnvelopeKind::QubitHandles: return "qubits";
    case EnvelopeKind::ControlBit: return "control";
    case EnvelopeKind::KeyValue: return "key";
    case EnvelopeKind::LeakRecord: return "leak";
    case EnvelopeKind::Computation: return "computation";
    case EnvelopeKind::Error: return "err";
  }
  return "?";
}

std::string LeakRecord::str() const {
  std::ostringstream os;
  os << "client=" << client << " round=" << round << " qubits=" << qubits << " gates=" << gates
     << " len=" << message_length << " sent=" << (sent ? 1 : 0);
  return os.str();
}

std::string KeyValue::digest() const {
  std::string s;
  for (const auto& k : keys) {
    if (!s.empty()) s += ",";
    s += k.digest();
  }
  return s;
}

namespace {
template <typename T>
const T& payload_as(const Envelope& e, const char* what) {
  const auto* p = std::get_if<T>(&e.payload);
  if (!p) throw Error(std::string("envelope does not carry ") + what);
  return *p;
}
}  // namespace

const std::vector<qsim::QubitId>& Envelope::qubits() const {
  return payload_as<std::vector<qsim::QubitId>>(*this, "qubit handles");
}
const std::vector<std::uint8_t>& Envelope::bits() const {
  return payload_as<std::vector<std::uint8_t>>(*this, "classical bits");
}
bool Envelope::control() const { return payload_as<bool>(*this, "a control bit"); }
const KeyValue& Envelope::key() const { return payload_as<KeyValue>(*this, "a key"); }
const LeakRecord& Envelope::leak() const { return payload_as<LeakRecord>(*this, "a leak record"); }
const Computation& Envelope::computation() const {
  return payload_as<Computation>(*this, "a computation");
}

Envelope make_bits(InterfaceId src, InterfaceId dst, std::vector<std::uint8_t> bits) {
  return Envelope{EnvelopeKind::ClassicalBits, std::move(bits), std::move(src), std::move(dst)};
}
Envelope make_qubits(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs) {
  return Envelope{EnvelopeKind::QubitHandles, std::move(qs), std::move(src), std::move(dst)};
}
Envelope make_control(InterfaceId src, InterfaceId dst, bool bit) {
  return Envelope{EnvelopeKind::ControlBit, bit, std::move(src), std::move(dst)};
}
Envelope make_key(InterfaceId src, InterfaceId dst, KeyValue key) {
  return Envelope{EnvelopeKind::KeyValue, std::move(key), std::move(src), std::move(dst)};
}
Envelope make_leak(InterfaceId src, InterfaceId dst, LeakRecord leak) {
  return Envelope{EnvelopeKind::LeakRecord, leak, std::move(src), std::move(dst)};
}
Envelope make_computation(InterfaceId src, InterfaceId dst, Computation c) {
  return Envelope{EnvelopeKind::Computation, std::move(c), std::move(src), std::move(dst)};
}
Envelope make_error(InterfaceId src, InterfaceId dst) {
  return Envelope{EnvelopeKind::Error, qsim::ErrMarker{}, std::move(src), std::move(dst)};
}

std::string payload_digest(const Envelope& e) {
  std::ostringstream os;
  switch (e.kind) {
    case EnvelopeKind::ClassicalBits:
      for (auto b : e.bits()) os << static_cast<int>(b);
      if (e.bits().empty()) os << "-";
      break;
    case EnvelopeKind::QubitHandles:
      os << e.qubits().size() << "q";
      break;
    case EnvelopeKind::ControlBit: os << (e.control() ? 1 : 0); break;
    case EnvelopeKind::KeyValue: os << e.key().digest(); break;
    case EnvelopeKind::LeakRecord: os << e.leak().str(); break;
    case EnvelopeKind::Computation: {
      const auto& c = e.computation();
      os << "in=" << c.inputs.size() << " gates=" << c.circuit.gate_count() << " rounds=" << c.rounds.size();
      break;
    }
    case EnvelopeKind::Error: os << "ERR"; break;
  }
  return os.str();
}

std::string Transcript::dump() const {
  std::ostringstream os;
  for (const auto& e : records_)
    os << e.step << ' ' << e.source.str() << ' ' << e.destination.str() << ' ' << to_string(e.kind) << ' '
       << payload_digest(e) << '\n';
  return os.str();
}

std::vector<Envelope> Transcript::view_of(const std::string& party) const {
  std::vector<Envelope> out;
  for (const auto& e : records_)
    if (e.source.party == party || e.destination.party == party) out.push_back(e);
  return out;
}

void Transcript::check_structure() const {
  std::uint64_t last = 0;
  bool first = true;
  for (const auto& e : records_) {
    if (!first && e.step <= last) throw InvariantError("transcript step counters do not increase");
    first = false;
    last = e.step;
    const bool leak_port = e.source.port.rfind("leak", 0) == 0 || e.destination.port.rfind("leak", 0) == 0;
    if (leak_port && e.kind != EnvelopeKind::LeakRecord)
      throw InvariantError("non-leak payload on leak port " + e.source.str());
  }
}

Envelope World::emit(Envelope e) {
  if (e.kind == EnvelopeKind::QubitHandles) {
    for (auto q : e.qubits()) {
      const auto& owner = substrate.owner_of(q);
      if (owner != e.source.party)
        throw InvariantError("envelope from " + e.source.str() + " carries qubit " + std::to_string(q.value) +
                             " held by '" + owner + "'");
    }
  }
  e.step = ++step;
  if (transcript) transcript->record(e);
  return e;
}

Envelope World::emit_qubits(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs) {
  substrate.set_owner(qs, src.party);
  return emit(make_qubits(std::move(src), std::move(dst), std::move(qs)));
}

Envelope World::transfer(InterfaceId src, InterfaceId dst, std::vector<qsim::QubitId> qs) {
  auto e = emit_qubits(std::move(src), std::move(dst), std::move(qs));
  substrate.set_owner(e.qubits(), e.destination.party);
  return e;
}

}  // namespace mcdqc::acframe
