#include "mcdqc/qsim/substrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mcdqc/qsim/kernels.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::qsim {

QuantumSubstrate::QuantumSubstrate() : rho_(Matrix::Ones(1, 1)) {}

QuantumSubstrate QuantumSubstrate::init_state(const std::vector<InitBlock>& spec) {
  QuantumSubstrate s;
  for (const auto& block : spec) {
    if (const auto* b = std::get_if<BasisState>(&block.state)) {
      s.append(*b, 1, block.owner);
    } else {
      s.append(std::get<Matrix>(block.state), block.owner);
    }
  }
  return s;
}

bool QuantumSubstrate::contains(QubitId q) const { return owner_.count(q) != 0; }

std::size_t QuantumSubstrate::position_of(QubitId q) const {
  const auto it = std::find(order_.begin(), order_.end(), q);
  if (it == order_.end()) throw Error("unknown qubit handle " + std::to_string(q.value));
  return static_cast<std::size_t>(it - order_.begin());
}

std::vector<std::size_t> QuantumSubstrate::positions_of(const std::vector<QubitId>& qs) const {
  std::vector<std::size_t> pos;
  pos.reserve(qs.size());
  for (auto q : qs) pos.push_back(position_of(q));
  std::vector<std::size_t> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("repeated qubit handle in target list");
  return pos;
}

const std::string& QuantumSubstrate::owner_of(QubitId q) const {
  const auto it = owner_.find(q);
  if (it == owner_.end()) throw Error("unknown qubit handle " + std::to_string(q.value));
  return it->second;
}

void QuantumSubstrate::set_owner(const std::vector<QubitId>& qs, const std::string& owner) {
  for (auto q : qs) {
    auto it = owner_.find(q);
    if (it == owner_.end()) throw Error("unknown qubit handle " + std::to_string(q.value));
    it->second = owner;
  }
}

void QuantumSubstrate::require_owner(const std::vector<QubitId>& qs,
                                     const std::string& owner) const {
  for (auto q : qs) {
    const auto& held = owner_of(q);
    if (held != owner)
      throw Error("qubit " + std::to_string(q.value) + " is held by '" + held + "', not '" +
                  owner + "'");
  }
}

std::vector<QubitId> QuantumSubstrate::owned_by(const std::string& owner) const {
  std::vector<QubitId> out;
  for (auto q : order_)
    if (owner_.at(q) == owner) out.push_back(q);
  return out;
}

void QuantumSubstrate::ensure_budget(std::size_t extra) const {
  if (num_qubits() + extra > kMaxQubits)
    throw BudgetError("substrate would hold " + std::to_string(num_qubits() + extra) +
                      " qubits (limit " + std::to_string(kMaxQubits) + ")");
}

std::vector<QubitId> QuantumSubstrate::append(BasisState s, std::size_t count,
                                              const std::string& owner) {
  ensure_budget(count);
  Matrix block = Matrix::Ones(1, 1);
  const Matrix one = basis_density(s);
  for (std::size_t k = 0; k < count; ++k) block = kron(block, one);
  return append(block, owner);
}

std::vector<QubitId> QuantumSubstrate::append(const Matrix& block, const std::string& owner) {
  std::size_t k = 0;
  while ((Eigen::Index{1} << k) < block.rows()) ++k;
  if ((Eigen::Index{1} << k) != block.rows() || block.rows() != block.cols())
    throw Error("state block is not 2^k x 2^k");
  ensure_budget(k);
  if (std::abs(block.trace() - Complex{1.0, 0.0}) > tol::kStructural)
    throw Error("state block is not normalised (trace deviates from 1)");
  if (!is_hermitian(block)) throw Error("state block is not Hermitian");
  rho_ = kron(rho_, block);
  std::vector<QubitId> ids;
  for (std::size_t j = 0; j < k; ++j) {
    QubitId q{next_id_++};
    order_.push_back(q);
    owner_.emplace(q, owner);
    ids.push_back(q);
  }
  return ids;
}

void QuantumSubstrate::apply(const Matrix& u, const std::vector<QubitId>& targets) {
  if (u.rows() != (Eigen::Index{1} << targets.size()) || u.cols() != u.rows())
    throw Error("operator size does not match " + std::to_string(targets.size()) + " targets");
  const auto pos = positions_of(targets);
  kernels::conjugate(rho_, num_qubits(), u, pos);
}

void QuantumSubstrate::apply(const GateList& g, const std::vector<QubitId>& targets) {
  if (g.min_width() > targets.size())
    throw Error("gate list references index " + std::to_string(g.min_width() - 1) +
                " but only " + std::to_string(targets.size()) + " targets were given");
  const auto pos = positions_of(targets);
  std::vector<std::size_t> local;
  for (const auto& gate : g.gates()) {
    local.clear();
    for (auto t : gate.targets) local.push_back(pos[t]);
    kernels::conjugate(rho_, num_qubits(), gate_matrix(gate.kind), local);
  }
}

void QuantumSubstrate::apply(const Circuit& c, const std::vector<QubitId>& slots) {
  if (c.width() != slots.size())
    throw Error("circuit width " + std::to_string(c.width()) + " does not match " +
                std::to_string(slots.size()) + " slots");
  const auto pos = positions_of(slots);
  std::vector<std::size_t> local;
  for (const auto& op : c.ops()) {
    local.clear();
    for (auto t : op.targets) local.push_back(pos[t]);
    kernels::conjugate(rho_, num_qubits(), op.unitary, local);
  }
}

void QuantumSubstrate::apply_pauli(const PauliString& p, const std::vector<QubitId>& targets) {
  if (p.length() != targets.size())
    throw Error("Pauli length " + std::to_string(p.length()) + " does not match " +
                std::to_string(targets.size()) + " targets");
  const auto pos = positions_of(targets);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const auto letter = p.letters()[j];
    if (letter == PauliLetter::I) continue;
    const GateKind kind = letter == PauliLetter::X   ? GateKind::X
                          : letter == PauliLetter::Y ? GateKind::Y
                                                     : GateKind::Z;
    const std::size_t t[1] = {pos[j]};
    kernels::conjugate(rho_, num_qubits(), gate_matrix(kind), t);
  }
}

Matrix QuantumSubstrate::reduced(const std::vector<QubitId>& keep) const {
  const auto pos = positions_of(keep);
  return kernels::partial_trace(rho_, num_qubits(), pos);
}

std::vector<int> QuantumSubstrate::measure(const std::vector<QubitId>& targets, Coins& coins) {
  const auto pos = positions_of(targets);
  const Matrix red = kernels::partial_trace(rho_, num_qubits(), pos);
  std::vector<double> probs(static_cast<std::size_t>(red.rows()));
  for (std::size_t k = 0; k < probs.size(); ++k)
    probs[k] = std::max(0.0, red(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  const std::size_t outcome = coins.weighted(probs);
  const double p = probs[outcome];
  if (p < tol::kBranch)
    throw InvariantError("measurement selected a zero-probability branch");

  const std::size_t n = num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const auto off = kernels::detail::local_offsets(n, pos);
  const std::size_t want = off[outcome];
  const std::size_t mask = kernels::detail::target_mask(n, pos);
  std::vector<char> keep(dim);
  for (std::size_t i = 0; i < dim; ++i) keep[i] = (i & mask) == want;
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      auto& x = rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      x = (keep[r] && keep[c]) ? x / p : Complex{0.0, 0.0};
    }
  }
  std::vector<int> bits(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j)
    bits[j] = static_cast<int>((outcome >> (targets.size() - 1 - j)) & 1U);
  return bits;
}

void QuantumSubstrate::discard(const std::vector<QubitId>& qs) {
  if (qs.empty()) return;
  (void)positions_of(qs);  // validates handles
  const std::set<QubitId> drop(qs.begin(), qs.end());
  std::vector<QubitId> remaining;
  std::vector<std::size_t> keep_pos;
  for (std::size_t p = 0; p < order_.size(); ++p) {
    if (drop.count(order_[p])) continue;
    remaining.push_back(order_[p]);
    keep_pos.push_back(p);
  }
  rho_ = kernels::partial_trace(rho_, num_qubits(), keep_pos);
  order_ = std::move(remaining);
  for (auto q : qs) owner_.erase(q);
}

void QuantumSubstrate::check_invariants() const {
  check_density(rho_, "substrate");
  if (rho_.rows() != (Eigen::Index{1} << order_.size()))
    throw InvariantError("substrate dimension does not match qubit count");
  if (owner_.size() != order_.size())
    throw InvariantError("ledger size does not match qubit count");
  std::set<QubitId> seen;
  for (auto q : order_) {
    if (!seen.insert(q).second) throw InvariantError("qubit listed twice in ledger order");
    if (!owner_.count(q)) throw InvariantError("qubit missing from ownership ledger");
  }
}

QuantumSubstrate apply_gates(QuantumSubstrate s, const GateList& g,
                             const std::vector<QubitId>& targets) {
  s.apply(g, targets);
  return s;
}

QuantumSubstrate apply_pauli(QuantumSubstrate s, const PauliString& p,
                             const std::vector<QubitId>& targets) {
  s.apply_pauli(p, targets);
  return s;
}

Matrix partial_trace(const QuantumSubstrate& s, const std::vector<QubitId>& keep) {
  return s.reduced(keep);
}

MeasureResult measure_computational(QuantumSubstrate s, const std::vector<QubitId>& targets,
                                    Coins& coins) {
  auto bits = s.measure(targets, coins);
  return MeasureResult{std::move(bits), std::move(s)};
}

}  // namespace mcdqc::qsim
