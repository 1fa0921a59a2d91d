#include "mcdqc/multiclient/round_unitary.hpp"

#include <algorithm>

namespace mcdqc::multiclient {

std::vector<std::size_t> BlockSlots::all() const {
  std::vector<std::size_t> out = data;
  out.insert(out.end(), traps.begin(), traps.end());
  return out;
}

RoundLayout round_layout(const Validated& v, std::size_t i, std::size_t h, std::size_t traps) {
  RoundLayout r;
  const auto& labels = v.labels(i, h);
  std::vector<std::size_t> label_slot(v.total_qubits, 0);
  std::size_t next = 0;
  if (h > 0) {
    for (std::size_t j = 0; j < v.n(); ++j) {
      const auto& t = v.transfer(j, i, h - 1);
      if (j == i || t.empty()) continue;
      BlockSlots b;
      b.peer = j;
      for (auto l : t) {
        label_slot[l] = next;
        b.data.push_back(next++);
      }
      for (std::size_t k = 0; k < traps; ++k) b.traps.push_back(next++);
      r.incoming.push_back(std::move(b));
    }
  }
  const auto& own = h == 0 ? labels : v.transfer(i, i, h - 1);
  for (auto l : own) {
    label_slot[l] = next;
    r.plain.push_back(next++);
  }
  for (auto l : labels) r.data_slot.push_back(label_slot[l]);

  if (h + 1 < v.m()) {
    for (std::size_t j = 0; j < v.n(); ++j) {
      const auto& t = v.transfer(i, j, h);
      if (t.empty()) continue;
      if (j == i) {
        for (auto p : v.positions(i, h, t)) r.kept.push_back(r.data_slot[p]);
        continue;
      }
      BlockSlots b;
      b.peer = j;
      for (auto p : v.positions(i, h, t)) b.data.push_back(r.data_slot[p]);
      for (std::size_t k = 0; k < traps; ++k) {
        r.ancillas.push_back(next);
        b.traps.push_back(next++);
      }
      r.outgoing.push_back(std::move(b));
    }
  } else {
    r.kept = r.data_slot;
  }
  r.width = next;
  return r;
}

qsim::Circuit build_round_unitary(const Validated& v, std::size_t i, std::size_t h, const RoundKeyTable& keys,
                                  std::size_t traps) {
  const auto layout = round_layout(v, i, h, traps);
  const auto key = [&](std::size_t from, std::size_t to, std::size_t round) -> const authcode::AuthKey& {
    const auto it = keys.find({from, to, round});
    if (it == keys.end())
      throw qsim::Error("missing key for wire " + std::to_string(from + 1) + "->" + std::to_string(to + 1) +
                        " after round " + std::to_string(round + 1));
    return it->second;
  };

  qsim::Circuit c(layout.width);
  for (const auto& b : layout.incoming) c.append(key(b.peer, i, h - 1).clifford.unitary.adjoint(), b.all(), 0);
  const auto u = v.round_circuit(i, h);
  bool first = true;
  for (const auto& op : u.ops()) {
    std::vector<std::size_t> targets;
    for (auto x : op.targets) targets.push_back(layout.data_slot[x]);
    c.append(op.unitary, std::move(targets), first ? u.gate_count() : 0);
    first = false;
  }
  for (const auto& b : layout.outgoing) c.append(key(i, b.peer, h).clifford.unitary, b.all(), 0);
  return c;
}

}  // namespace mcdqc::multiclient
