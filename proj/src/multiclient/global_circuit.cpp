#include "mcdqc/multiclient/global_circuit.hpp"

namespace mcdqc::multiclient {

GlobalOutput evaluate_global(const Validated& v) {
  qsim::QuantumSubstrate s;
  std::vector<qsim::QubitId> handle(v.total_qubits);
  for (std::size_t i = 0; i < v.n(); ++i) {
    const auto& labels = v.wiring.input_labels[i];
    for (std::size_t k = 0; k < labels.size(); ++k)
      handle[labels[k]] = s.append(v.scenario.clients[i].inputs[k], 1, "global")[0];
  }
  for (std::size_t h = 0; h < v.m(); ++h)
    for (std::size_t i = 0; i < v.n(); ++i) {
      std::vector<qsim::QubitId> slots;
      for (auto l : v.labels(i, h)) slots.push_back(handle[l]);
      if (!slots.empty()) s.apply(v.round_circuit(i, h), slots);
    }

  GlobalOutput out;
  std::vector<qsim::QubitId> all;
  for (std::size_t i = 0; i < v.n(); ++i) {
    std::vector<qsim::QubitId> mine;
    for (auto l : v.wiring.output_labels[i]) mine.push_back(handle[l]);
    all.insert(all.end(), mine.begin(), mine.end());
    if (mine.empty()) out.per_client.emplace_back();
    else out.per_client.emplace_back(s.reduced(mine));
  }
  out.joint = s.reduced(all);
  return out;
}

}  // namespace mcdqc::multiclient
