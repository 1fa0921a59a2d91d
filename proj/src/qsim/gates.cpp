#include "mcdqc/qsim/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mcdqc/qsim/kernels.hpp"

namespace mcdqc::qsim {

namespace {

constexpr std::array<std::string_view, 9> kNames = {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ"};

Matrix make_matrix(GateKind kind) {
  const Complex i{0.0, 1.0};
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m;
  switch (kind) {
    case GateKind::I: m = Matrix::Identity(2, 2); break;
    case GateKind::X: m.resize(2, 2); m << 0, 1, 1, 0; break;
    case GateKind::Y: m.resize(2, 2); m << 0, -i, i, 0; break;
    case GateKind::Z: m.resize(2, 2); m << 1, 0, 0, -1; break;
    case GateKind::H: m.resize(2, 2); m << r, r, r, -r; break;
    case GateKind::S: m.resize(2, 2); m << 1, 0, 0, i; break;
    case GateKind::T: m.resize(2, 2); m << 1, 0, 0, std::polar(1.0, M_PI / 4); break;
    case GateKind::CNOT:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      break;
    case GateKind::CZ:
      m = Matrix::Identity(4, 4);
      m(3, 3) = -1;
      break;
  }
  return m;
}

}  // namespace

std::string to_string(BasisState s) {
  switch (s) {
    case BasisState::Zero: return "0";
    case BasisState::One: return "1";
    case BasisState::Plus: return "+";
    case BasisState::Minus: return "-";
  }
  return "?";
}

BasisState parse_basis_state(const std::string& text) {
  if (text == "0") return BasisState::Zero;
  if (text == "1") return BasisState::One;
  if (text == "+") return BasisState::Plus;
  if (text == "-") return BasisState::Minus;
  throw Error("unknown basis state '" + text + "' (expected 0, 1, + or -)");
}

std::size_t arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

std::string_view gate_name(GateKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

GateKind parse_gate_kind(std::string_view name) {
  for (std::size_t k = 0; k < kNames.size(); ++k)
    if (kNames[k] == name) return static_cast<GateKind>(k);
  throw Error("unknown gate '" + std::string(name) + "'");
}

const Matrix& gate_matrix(GateKind kind) {
  static const std::array<Matrix, 9> table = [] {
    std::array<Matrix, 9> t;
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = make_matrix(static_cast<GateKind>(k));
    return t;
  }();
  return table[static_cast<std::size_t>(kind)];
}

GateList::GateList(std::vector<Gate> gates) {
  for (auto& g : gates) push(g.kind, std::move(g.targets));
}

void GateList::push(GateKind kind, std::vector<std::size_t> targets) {
  if (targets.size() != arity(kind))
    throw Error("gate " + std::string(gate_name(kind)) + " expects " +
                std::to_string(arity(kind)) + " target(s), got " +
                std::to_string(targets.size()));
  auto sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("gate " + std::string(gate_name(kind)) + " repeats a target qubit");
  gates_.push_back(Gate{kind, std::move(targets)});
}

std::size_t GateList::min_width() const {
  std::size_t w = 0;
  for (const auto& g : gates_)
    for (auto t : g.targets) w = std::max(w, t + 1);
  return w;
}

GateList GateList::parse(std::string_view text) {
  GateList out;
  std::string buf(text);
  std::stringstream all(buf);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::stringstream ss(item);
    std::string name;
    if (!(ss >> name)) continue;
    std::vector<std::size_t> targets;
    std::string tok;
    while (ss >> tok) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size()) throw Error("bad qubit index '" + tok + "'");
      targets.push_back(v);
    }
    out.push(parse_gate_kind(name), std::move(targets));
  }
  return out;
}

GateList inverse(const GateList& g) {
  GateList out;
  for (auto it = g.gates().rbegin(); it != g.gates().rend(); ++it) {
    std::size_t reps = 1;
    if (it->kind == GateKind::S) reps = 3;
    if (it->kind == GateKind::T) reps = 7;
    for (std::size_t r = 0; r < reps; ++r) out.push(it->kind, it->targets);
  }
  return out;
}

Matrix embed(const Matrix& op, const std::vector<std::size_t>& targets, std::size_t width) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width);
  Matrix m = Matrix::Identity(dim, dim);
  kernels::serial::apply_left(m, width, op, targets);
  return m;
}

Matrix dense(const GateList& g, std::size_t width) {
  if (g.min_width() > width) throw Error("gate list references a qubit outside the register");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width);
  Matrix m = Matrix::Identity(dim, dim);
  for (const auto& gate : g.gates()) kernels::serial::apply_left(m, width, gate_matrix(gate.kind), gate.targets);
  return m;
}

Circuit Circuit::from_gates(const GateList& g, std::size_t width) {
  Circuit c(width);
  std::vector<std::size_t> identity(width);
  for (std::size_t i = 0; i < width; ++i) identity[i] = i;
  c.append(g, identity);
  return c;
}

Circuit& Circuit::append(Matrix unitary, std::vector<std::size_t> targets, std::size_t gates) {
  if (unitary.rows() != (Eigen::Index{1} << targets.size()) || unitary.cols() != unitary.rows())
    throw Error("circuit op dimension does not match its target count");
  for (auto t : targets)
    if (t >= width_) throw Error("circuit op target outside circuit width");
  ops_.push_back(LocalOp{std::move(unitary), std::move(targets)});
  gate_count_ += gates;
  return *this;
}

Circuit& Circuit::append(const GateList& g, const std::vector<std::size_t>& slot_of_index) {
  for (const auto& gate : g.gates()) {
    std::vector<std::size_t> targets;
    for (auto t : gate.targets) {
      if (t >= slot_of_index.size()) throw Error("gate list index has no slot mapping");
      targets.push_back(slot_of_index[t]);
    }
    append(gate_matrix(gate.kind), std::move(targets), 1);
  }
  return *this;
}

Matrix Circuit::dense() const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width_);
  Matrix m = Matrix::Identity(dim, dim);
  for (const auto& op : ops_) kernels::serial::apply_left(m, width_, op.unitary, op.targets);
  return m;
}

}  // namespace mcdqc::qsim
