#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcdqc/acframe/envelope.hpp"

namespace mcdqc::acframe {

/// Several systems wired together. A part's inside interface binds to the
/// other part exposing the same id on its outside; the composite exposes the
/// remaining outside ids (and, when allow_open, the unbound inside ids, which
/// makes it a converter itself). Parallel composition is the case with no
/// bindings.
class Composite final : public System {
 public:
  /// Throws Error on a dangling inside port (unless allow_open), on an inside
  /// id bound twice, or on an outside id exposed by two parts.
  explicit Composite(std::vector<SystemPtr> parts, bool allow_open = false, std::string label = "");

  std::string name() const override;
  std::vector<InterfaceId> outside() const override { return exposed_; }
  std::vector<InterfaceId> inside() const override { return open_; }
  std::vector<Envelope> receive(World& w, const Envelope& in) override;
  std::vector<Envelope> activate(World& w) override;

  std::size_t size() const { return parts_.size(); }
  System& part(std::size_t k) { return *parts_[k]; }

 private:
  std::vector<Envelope> run(World& w, std::vector<std::pair<std::size_t, Envelope>> queue);
  void route(std::size_t from, Envelope e, std::vector<std::pair<std::size_t, Envelope>>& queue,
             std::vector<Envelope>& external) const;

  std::vector<SystemPtr> parts_;
  std::string label_;
  std::map<InterfaceId, std::size_t> outside_owner_;
  std::map<InterfaceId, std::size_t> inside_owner_;
  std::vector<InterfaceId> exposed_;
  std::vector<InterfaceId> open_;
};

SystemPtr compose(std::vector<SystemPtr> parts, bool allow_open = false);
SystemPtr parallel(SystemPtr a, SystemPtr b);

/// Covers interfaces with honest behaviour: pinned control bits are sent once
/// at activation; everything arriving on a covered interface is swallowed.
class Filter final : public System {
 public:
  Filter(std::vector<InterfaceId> covered, std::map<InterfaceId, bool> pinned, std::string label = "filter");

  std::string name() const override { return label_; }
  std::vector<InterfaceId> outside() const override { return {}; }
  std::vector<InterfaceId> inside() const override { return covered_; }
  std::vector<Envelope> receive(World& w, const Envelope& in) override;
  std::vector<Envelope> activate(World& w) override;

 private:
  std::vector<InterfaceId> covered_;
  std::map<InterfaceId, bool> pinned_;
  std::string label_;
};

/// The honest-server filter: swallows the leak and pins f to 0.
SystemPtr bottom_filter(const InterfaceId& leak, const InterfaceId& f);

/// pi^e: on input at (party, "qin" + outer) fetch a key from K and send
/// E_k(rho) on C^q-insec. The inner tag names the K and channel ports, so
/// the converted system exposes the same honest ports as C^q-sec.
class EncodeConverter final : public System {
 public:
  explicit EncodeConverter(std::string party = "A", std::string inner = "~", std::string outer = "");

  std::string name() const override { return "pi_e." + party_ + outer_; }
  std::vector<InterfaceId> outside() const override { return {{party_, "qin" + outer_}}; }
  std::vector<InterfaceId> inside() const override { return {{party_, "key" + inner_}, {party_, "qin" + inner_}}; }
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

 private:
  std::string party_, inner_, outer_;
  std::vector<qsim::QubitId> pending_;
};

/// pi^d: on a block at (party, "qout" + inner) fetch the key and output
/// D_k(block), or ERR, at (party, "qout" + outer).
class DecodeConverter final : public System {
 public:
  explicit DecodeConverter(std::string party = "B", std::string inner = "~", std::string outer = "");

  std::string name() const override { return "pi_d." + party_ + outer_; }
  std::vector<InterfaceId> outside() const override { return {{party_, "qout" + outer_}}; }
  std::vector<InterfaceId> inside() const override { return {{party_, "key" + inner_}, {party_, "qout" + inner_}}; }
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

 private:
  std::string party_, inner_, outer_;
  std::vector<qsim::QubitId> pending_;
};

}  // namespace mcdqc::acframe
