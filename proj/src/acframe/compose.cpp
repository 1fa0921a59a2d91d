#include "mcdqc/acframe/compose.hpp"

#include <deque>

namespace mcdqc::acframe {

using qsim::Error;
using qsim::InvariantError;

namespace {
constexpr std::size_t kMaxDeliveries = 100000;

bool declares(const std::vector<InterfaceId>& ids, const InterfaceId& id) {
  for (const auto& x : ids)
    if (x == id) return true;
  return false;
}
}  // namespace

Composite::Composite(std::vector<SystemPtr> parts, bool allow_open, std::string label)
    : parts_(std::move(parts)), label_(std::move(label)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    for (const auto& id : parts_[k]->outside())
      if (!outside_owner_.emplace(id, k).second) throw Error("interface " + id.str() + " exposed twice");
    for (const auto& id : parts_[k]->inside())
      if (!inside_owner_.emplace(id, k).second) throw Error("double binding of " + id.str());
  }
  for (const auto& [id, k] : inside_owner_) {
    auto it = outside_owner_.find(id);
    if (it == outside_owner_.end()) {
      if (!allow_open) throw Error("dangling port " + id.str() + " on " + parts_[k]->name());
      open_.push_back(id);
    } else if (it->second == k) {
      throw Error(parts_[k]->name() + " binds its own interface " + id.str());
    }
  }
  for (const auto& [id, k] : outside_owner_)
    if (!inside_owner_.count(id)) exposed_.push_back(id);
}

std::string Composite::name() const {
  if (!label_.empty()) return label_;
  std::string s = "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) s += " | ";
    s += parts_[k]->name();
  }
  return s + ")";
}

void Composite::route(std::size_t from, Envelope e, std::vector<std::pair<std::size_t, Envelope>>& queue,
                      std::vector<Envelope>& external) const {
  const auto& d = e.destination;
  const System& p = *parts_[from];
  if (declares(p.outside(), d)) {
    auto it = inside_owner_.find(d);
    if (it != inside_owner_.end()) queue.emplace_back(it->second, std::move(e));
    else external.push_back(std::move(e));
    return;
  }
  if (declares(p.inside(), d)) {
    auto it = outside_owner_.find(d);
    if (it != outside_owner_.end()) queue.emplace_back(it->second, std::move(e));
    else external.push_back(std::move(e));
    return;
  }
  throw InvariantError(p.name() + " emitted on undeclared interface " + d.str());
}

std::vector<Envelope> Composite::run(World& w, std::vector<std::pair<std::size_t, Envelope>> pending) {
  std::vector<Envelope> external;
  std::deque<std::pair<std::size_t, Envelope>> queue(std::make_move_iterator(pending.begin()),
                                                    std::make_move_iterator(pending.end()));
  std::size_t deliveries = 0;
  while (!queue.empty()) {
    if (++deliveries > kMaxDeliveries) throw InvariantError(name() + ": message loop does not terminate");
    auto [target, env] = std::move(queue.front());
    queue.pop_front();
    std::vector<std::pair<std::size_t, Envelope>> next;
    for (auto& out : parts_[target]->receive(w, env)) route(target, std::move(out), next, external);
    for (auto& n : next) queue.push_back(std::move(n));
  }
  return external;
}

std::vector<Envelope> Composite::receive(World& w, const Envelope& in) {
  std::size_t target = 0;
  auto it = outside_owner_.find(in.destination);
  if (it != outside_owner_.end() && !inside_owner_.count(in.destination)) {
    target = it->second;
  } else if (declares(open_, in.destination)) {
    target = inside_owner_.at(in.destination);
  } else {
    throw Error(name() + " has no interface " + in.destination.str());
  }
  return run(w, {{target, in}});
}

std::vector<Envelope> Composite::activate(World& w) {
  std::vector<std::pair<std::size_t, Envelope>> first;
  std::vector<Envelope> external;
  for (std::size_t k = 0; k < parts_.size(); ++k)
    for (auto& e : parts_[k]->activate(w)) route(k, std::move(e), first, external);
  auto rest = run(w, std::move(first));
  for (auto& e : rest) external.push_back(std::move(e));
  return external;
}

SystemPtr compose(std::vector<SystemPtr> parts, bool allow_open) {
  return std::make_unique<Composite>(std::move(parts), allow_open);
}

SystemPtr parallel(SystemPtr a, SystemPtr b) {
  std::vector<SystemPtr> parts;
  parts.push_back(std::move(a));
  parts.push_back(std::move(b));
  return std::make_unique<Composite>(std::move(parts), true);
}

// ---------------------------------------------------------------- filters

Filter::Filter(std::vector<InterfaceId> covered, std::map<InterfaceId, bool> pinned, std::string label)
    : covered_(std::move(covered)), pinned_(std::move(pinned)), label_(std::move(label)) {
  for (const auto& [id, bit] : pinned_)
    if (!declares(covered_, id)) throw Error("filter pins uncovered interface " + id.str());
}

std::vector<Envelope> Filter::receive(World&, const Envelope&) { return {}; }

std::vector<Envelope> Filter::activate(World& w) {
  std::vector<Envelope> out;
  for (const auto& [id, bit] : pinned_) out.push_back(w.emit(make_control(id, id, bit)));
  return out;
}

SystemPtr bottom_filter(const InterfaceId& leak, const InterfaceId& f) {
  return std::make_unique<Filter>(std::vector<InterfaceId>{leak, f}, std::map<InterfaceId, bool>{{f, false}},
                                  "bottom." + f.party);
}

// ---------------------------------------------------------------- pi^e / pi^d

EncodeConverter::EncodeConverter(std::string party, std::string inner, std::string outer)
    : party_(std::move(party)), inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_ == outer_) throw Error("converter inner and outer tags must differ");
}

std::vector<Envelope> EncodeConverter::receive(World& w, const Envelope& in) {
  const InterfaceId key{party_, "key" + inner_}, qin{party_, "qin" + inner_};
  if (in.destination == InterfaceId{party_, "qin" + outer_}) {
    if (!pending_.empty()) throw Error(name() + ": message already pending");
    pending_ = in.qubits();
    if (pending_.empty()) throw Error(name() + ": empty message");
    return {w.emit(make_control(key, key, true))};
  }
  if (in.destination == key) {
    if (pending_.empty()) throw Error(name() + ": key without a message");
    const auto& k = in.key().keys.at(0);
    if (k.m != pending_.size()) throw Error(name() + ": key size does not match the message");
    auto block = authcode::auth_encode(w.substrate, pending_, k);
    pending_.clear();
    return {w.emit_qubits(qin, qin, std::move(block))};
  }
  throw Error(name() + " has no input port " + in.destination.str());
}

DecodeConverter::DecodeConverter(std::string party, std::string inner, std::string outer)
    : party_(std::move(party)), inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_ == outer_) throw Error("converter inner and outer tags must differ");
}

std::vector<Envelope> DecodeConverter::receive(World& w, const Envelope& in) {
  const InterfaceId key{party_, "key" + inner_}, qout{party_, "qout" + inner_}, out{party_, "qout" + outer_};
  if (in.destination == qout) {
    if (!pending_.empty()) throw Error(name() + ": block already pending");
    pending_ = in.qubits();
    return {w.emit(make_control(key, key, true))};
  }
  if (in.destination == key) {
    const auto& k = in.key().keys.at(0);
    if (k.block_size() != pending_.size()) {
      // wrong-size injection: reject like any other forgery
      w.substrate.discard(pending_);
      pending_.clear();
      return {w.emit(make_error(out, out))};
    }
    auto v = authcode::auth_decode(w.substrate, pending_, k, *w.coins);
    pending_.clear();
    if (!v.accepted) return {w.emit(make_error(out, out))};
    return {w.emit_qubits(out, out, std::move(v.message))};
  }
  throw Error(name() + " has no input port " + in.destination.str());
}

}  // namespace mcdqc::acframe
