#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcdqc/acframe/envelope.hpp"
#include "mcdqc/authcode/qas.hpp"

namespace mcdqc::acframe {

/// K: a uniform authentication key delivered at both honest interfaces on
/// request. The E interface is inert.
class KeyResource final : public System {
 public:
  KeyResource(std::size_t m, std::size_t t, std::string a = "A", std::string b = "B", std::string tag = "");

  std::string name() const override { return "K" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  const std::optional<authcode::AuthKey>& key() const { return key_; }

 private:
  std::size_t m_, t_;
  std::string a_, b_, tag_;
  std::optional<authcode::AuthKey> key_;
  bool served_a_ = false, served_b_ = false;
};

/// C^q-insec: everything sent goes to E; whatever E injects reaches B. When
/// filtered, messages pass straight through.
class InsecureQChannel final : public System {
 public:
  InsecureQChannel(bool filtered, std::string sender = "A", std::string receiver = "B", std::string tag = "",
                   std::string adversary = "E");

  std::string name() const override { return "Cq-insec" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  InterfaceId in_port() const { return {sender_, "qin" + tag_}; }
  InterfaceId out_port() const { return {receiver_, "qout" + tag_}; }
  InterfaceId tap_port() const { return {adversary_, "tap" + tag_}; }
  InterfaceId inject_port() const { return {adversary_, "inject" + tag_}; }

 private:
  bool filtered_;
  std::string sender_, receiver_, tag_, adversary_;
};

/// C^c-auth: classical messages arrive unmodified; E learns only the length.
class AuthCChannel final : public System {
 public:
  AuthCChannel(std::string sender = "A", std::string receiver = "B", std::string tag = "",
               std::string adversary = "E");

  std::string name() const override { return "Cc-auth" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  InterfaceId in_port() const { return {sender_, "cin" + tag_}; }
  InterfaceId out_port() const { return {receiver_, "cout" + tag_}; }
  InterfaceId leak_port() const { return {adversary_, "leak" + tag_}; }

 private:
  std::string sender_, receiver_, tag_, adversary_;
};

/// C^q-sec: leaks the message size, then delivers or replaces by ERR per f.
class SecureQChannel final : public System {
 public:
  SecureQChannel(std::string sender = "A", std::string receiver = "B", std::string tag = "");

  std::string name() const override { return "Cq-sec" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

 private:
  std::vector<Envelope> settle(World& w);

  std::string sender_, receiver_, tag_;
  std::optional<bool> f_;
  std::optional<std::vector<qsim::QubitId>> pending_;
};

/// S^bv: single-client blind verifiable DQC. The leak is emitted as soon as psi
/// arrives; f = 0 returns U rho at C, f = 1 returns ERR.
class SbvResource final : public System {
 public:
  explicit SbvResource(std::string client = "C", std::string server = "S", std::string tag = "");

  std::string name() const override { return "Sbv" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  InterfaceId psi_port() const { return {client_, "psi" + tag_}; }
  InterfaceId out_port() const { return {client_, "out" + tag_}; }
  InterfaceId leak_port() const { return {server_, "leak" + tag_}; }
  InterfaceId f_port() const { return {server_, "f" + tag_}; }

 private:
  std::vector<Envelope> settle(World& w);

  std::string client_, server_, tag_;
  std::optional<bool> f_;
  std::optional<Computation> pending_;
};

/// S^bb: takes U and the incoming keys k' at C and the authenticated blocks at
/// S. f = 0: undoes each E_k' (a failed trap check gives ERR), applies U,
/// re-encodes each output group under a fresh key, returns the keys at C and
/// the blocks at S. f = 1: leak at S, ERR at C.
class SbbResource final : public System {
 public:
  explicit SbbResource(std::string client = "C", std::string server = "S", std::string tag = "");

  std::string name() const override { return "Sbb" + tag_; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  InterfaceId c_in() const { return {client_, "in" + tag_}; }
  InterfaceId c_key() const { return {client_, "key" + tag_}; }
  InterfaceId c_out() const { return {client_, "out" + tag_}; }
  InterfaceId s_in() const { return {server_, "in" + tag_}; }
  InterfaceId s_out() const { return {server_, "out" + tag_}; }
  InterfaceId leak_port() const { return {server_, "leak" + tag_}; }
  InterfaceId f_port() const { return {server_, "f" + tag_}; }

 private:
  std::vector<Envelope> settle(World& w);

  std::string client_, server_, tag_;
  std::optional<bool> f_;
  std::optional<Computation> computation_;
  std::optional<std::vector<qsim::QubitId>> blocks_;
  bool leaked_ = false;
};

/// Label layout of an n-client computation, in global label indices.
struct GlobalWiring {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<std::size_t>> input_labels;               // [i]
  std::vector<std::vector<std::vector<std::size_t>>> round_labels;  // [i][h]
  std::vector<std::vector<std::size_t>> output_labels;              // [i]
};

/// S^n-bv: collects every client's psi_i, then evaluates the wired global
/// circuit directly (f = 0) or returns ERR to every expecting client (f = 1).
class SnbvResource final : public System {
 public:
  explicit SnbvResource(GlobalWiring wiring, std::string server = "S");

  std::string name() const override { return "Snbv"; }
  std::vector<InterfaceId> outside() const override;
  std::vector<Envelope> receive(World& w, const Envelope& in) override;

  static std::string client_party(std::size_t i) { return "C" + std::to_string(i + 1); }

 private:
  std::vector<Envelope> settle(World& w);

  GlobalWiring wiring_;
  std::string server_;
  std::optional<bool> f_;
  std::vector<std::optional<Computation>> psi_;
  bool done_ = false;
};

}  // namespace mcdqc::acframe
