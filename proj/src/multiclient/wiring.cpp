#include "mcdqc/multiclient/wiring.hpp"

#include <algorithm>
#include <map>

namespace mcdqc::multiclient {

namespace {

std::string where(std::size_t i, std::size_t h) {
  return "client " + std::to_string(i + 1) + " round " + std::to_string(h + 1);
}

}  // namespace

std::vector<std::size_t> Validated::positions(std::size_t i, std::size_t h,
                                              const std::vector<std::size_t>& which) const {
  const auto& all = labels(i, h);
  std::vector<std::size_t> out;
  for (auto l : which) {
    const auto it = std::find(all.begin(), all.end(), l);
    if (it == all.end()) throw qsim::Error("label " + std::to_string(l) + " is not held in " + where(i, h));
    out.push_back(static_cast<std::size_t>(it - all.begin()));
  }
  return out;
}

qsim::Circuit Validated::round_circuit(std::size_t i, std::size_t h) const {
  return qsim::Circuit::from_gates(scenario.clients[i].unitaries[h], labels(i, h).size());
}

Validated validate_scenario(Scenario s) {
  if (s.n == 0) throw ValidationError("scenario needs at least one client");
  if (s.m == 0) throw ValidationError("scenario needs at least one round");
  if (s.clients.size() != s.n)
    throw ValidationError("scenario declares n=" + std::to_string(s.n) + " but lists " +
                          std::to_string(s.clients.size()) + " clients");
  for (std::size_t i = 0; i < s.n; ++i) {
    auto& u = s.clients[i].unitaries;
    if (u.size() > s.m)
      throw ValidationError("client " + std::to_string(i + 1) + " has " + std::to_string(u.size()) +
                            " unitaries but m=" + std::to_string(s.m));
    u.resize(s.m);
  }

  Validated v;
  v.wiring.n = s.n;
  v.wiring.m = s.m;
  v.wiring.input_labels.resize(s.n);
  v.wiring.round_labels.assign(s.n, std::vector<std::vector<std::size_t>>(s.m));
  v.wiring.output_labels.resize(s.n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t k = 0; k < s.clients[i].inputs.size(); ++k) v.wiring.input_labels[i].push_back(next++);
    v.wiring.round_labels[i][0] = v.wiring.input_labels[i];
  }
  v.total_qubits = next;
  if (next > qsim::kMaxQubits)
    throw qsim::BudgetError("scenario uses " + std::to_string(next) + " qubits, budget is " +
                            std::to_string(qsim::kMaxQubits));

  for (const auto& w : s.wires) {
    if (w.from < 1 || w.from > s.n || w.to < 1 || w.to > s.n)
      throw ValidationError("wire " + std::to_string(w.from) + "->" + std::to_string(w.to) +
                            " names a client outside 1.." + std::to_string(s.n));
    if (w.round < 1 || w.round >= s.m)
      throw ValidationError("wire " + std::to_string(w.from) + "->" + std::to_string(w.to) + " at round " +
                            std::to_string(w.round) + ": rounds with a successor are 1.." + std::to_string(s.m - 1));
  }

  v.transfers.assign(s.m > 0 ? s.m - 1 : 0,
                     std::vector<std::vector<std::vector<std::size_t>>>(s.n, std::vector<std::vector<std::size_t>>(s.n)));
  for (std::size_t h = 0; h + 1 < s.m; ++h) {
    for (std::size_t i = 0; i < s.n; ++i) {
      const auto& held = v.wiring.round_labels[i][h];
      std::map<std::size_t, std::size_t> taken;  // label -> receiver
      for (const auto& w : s.wires) {
        if (w.from != i + 1 || w.round != h + 1) continue;
        for (auto l : w.labels) {
          if (std::find(held.begin(), held.end(), l) == held.end())
            throw ValidationError("dangling output: label " + std::to_string(l) + " is not an output of " +
                                  where(i, h));
          if (auto it = taken.find(l); it != taken.end())
            throw ValidationError("overlapping wires: label " + std::to_string(l) + " of " + where(i, h) +
                                  " is sent to client " + std::to_string(it->second + 1) + " and client " +
                                  std::to_string(w.to));
          taken[l] = w.to - 1;
        }
      }
      for (auto l : held) {
        const auto it = taken.find(l);
        v.transfers[h][i][it == taken.end() ? i : it->second].push_back(l);
      }
      for (auto& t : v.transfers[h][i]) std::sort(t.begin(), t.end());
    }
    for (std::size_t j = 0; j < s.n; ++j)
      for (std::size_t i = 0; i < s.n; ++i) {
        const auto& t = v.transfers[h][i][j];
        v.wiring.round_labels[j][h + 1].insert(v.wiring.round_labels[j][h + 1].end(), t.begin(), t.end());
      }
  }
  for (std::size_t i = 0; i < s.n; ++i) v.wiring.output_labels[i] = v.wiring.round_labels[i][s.m - 1];

  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t h = 0; h < s.m; ++h) {
      const auto width = v.wiring.round_labels[i][h].size();
      const auto need = s.clients[i].unitaries[h].min_width();
      if (need > width)
        throw ValidationError(where(i, h) + ": gate list touches qubit " + std::to_string(need - 1) + " but only " +
                              std::to_string(width) + " qubits arrive");
    }
  v.scenario = std::move(s);
  return v;
}

Scenario two_client_scenario(std::vector<qsim::BasisState> input, qsim::GateList u1, qsim::GateList u2) {
  Scenario s;
  s.n = 2;
  s.m = 2;
  s.clients.resize(2);
  s.clients[0].inputs = std::move(input);
  s.clients[0].unitaries = {std::move(u1), {}};
  s.clients[1].unitaries = {{}, std::move(u2)};
  Wire w;
  w.from = 1;
  w.to = 2;
  w.round = 1;
  for (std::size_t k = 0; k < s.clients[0].inputs.size(); ++k) w.labels.push_back(k);
  s.wires.push_back(std::move(w));
  return s;
}

}  // namespace mcdqc::multiclient
