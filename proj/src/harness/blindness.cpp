#include "mcdqc/harness/blindness.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "mcdqc/qsim/kernels.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::harness {

std::string SizeProfile::str() const {
  std::ostringstream os;
  os << protocol << " n=" << n << " m=" << m;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    os << " C" << i + 1 << ":";
    for (std::size_t h = 0; h < qubits[i].size(); ++h) os << (h ? "," : "") << qubits[i][h] << "q/" << gates[i][h] << "g";
  }
  return os.str();
}

SizeProfile size_profile(const ScenarioFile& f) {
  SizeProfile p;
  p.protocol = multiclient::to_string(f.protocol);
  p.n = f.shape.n();
  p.m = f.shape.m();
  p.qubits.assign(p.n, std::vector<std::size_t>(p.m, 0));
  p.gates = p.qubits;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t h = 0; h < p.m; ++h) {
      p.qubits[i][h] = f.shape.labels(i, h).size();
      p.gates[i][h] = f.shape.round_circuit(i, h).gate_count();
    }
  return p;
}

namespace {

bool server_side(const acframe::InterfaceId& id) { return id.party == dqc::kServer || id.party == "E"; }

class Recorder final : public dqc::ServerAdversary {
 public:
  void on_quantum(const dqc::SiteInfo&, qsim::QuantumSubstrate& sub, const std::vector<qsim::QubitId>& qs,
                  qsim::Coins&) override {
    auto held = sub.owned_by(dqc::kServer);
    for (auto q : qs)
      if (std::find(held.begin(), held.end(), q) == held.end()) held.push_back(q);
    std::sort(held.begin(), held.end(), [&](auto x, auto y) { return sub.position_of(x) < sub.position_of(y); });
    auto rho = sub.reduced(held);
    const std::array<qsim::Matrix, 4> paulis{qsim::PauliString::parse("I").matrix(), qsim::PauliString::parse("X").matrix(),
                                             qsim::PauliString::parse("Y").matrix(), qsim::PauliString::parse("Z").matrix()};
    for (std::size_t k = 0; k < held.size(); ++k) {
      const std::array<std::size_t, 1> target{k};
      rho = qsim::kernels::twirl(rho, held.size(), paulis, target);
    }
    snapshots.push_back(std::move(rho));
  }

  std::vector<qsim::Matrix> snapshots;
};

}  // namespace

ServerView server_view(const ScenarioFile& file) {
  ScenarioFile f = file;
  f.options.backend.kind = dqc::Backend::Ideal;
  qsim::SeededCoins coins(f.seed);
  Recorder rec;
  const auto out = multiclient::run_protocol(f.protocol, f.shape, f.options, rec, coins);
  if (out.aborted()) throw qsim::InvariantError("honest run aborted in the blindness check");
  ServerView v;
  for (const auto& e : out.transcript.records()) {
    if (!server_side(e.source) && !server_side(e.destination)) continue;
    v.classical.push_back(e.source.str() + " " + e.destination.str() + " " + acframe::to_string(e.kind) + " " +
                          acframe::payload_digest(e));
  }
  v.snapshots = std::move(rec.snapshots);
  return v;
}

BlindnessResult blindness_check(const ScenarioFile& a, const ScenarioFile& b) {
  const auto pa = size_profile(a), pb = size_profile(b);
  if (!(pa == pb)) throw SizeProfileError("size profiles differ: " + pa.str() + " vs " + pb.str());
  const auto va = server_view(a), vb = server_view(b);
  BlindnessResult r;
  r.snapshots = va.snapshots.size();
  r.classical_equal = va.classical == vb.classical;
  if (!r.classical_equal || va.snapshots.size() != vb.snapshots.size()) {
    // Deterministic views that differ are perfectly distinguishable.
    r.classical_equal = false;
    r.distance = 1.0;
    return r;
  }
  for (std::size_t k = 0; k < va.snapshots.size(); ++k) {
    if (va.snapshots[k].rows() != vb.snapshots[k].rows()) {
      r.distance = 1.0;
      return r;
    }
    r.distance = std::max(r.distance, qsim::trace_distance(va.snapshots[k], vb.snapshots[k]));
  }
  return r;
}

}  // namespace mcdqc::harness
