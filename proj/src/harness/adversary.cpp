#include "mcdqc/harness/adversary.hpp"

#include <sstream>

#include "mcdqc/qsim/linalg.hpp"
#include "mcdqc/qsim/pauli.hpp"

namespace mcdqc::harness {

using dqc::SiteInfo;
using qsim::QubitId;

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::Honest: return "honest";
    case StrategyKind::AbortFlip: return "abort-flip";
    case StrategyKind::PauliTamper: return "pauli-tamper";
    case StrategyKind::UnitaryTamper: return "unitary-tamper";
    case StrategyKind::MeasureResend: return "measure-resend";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& text) {
  for (auto k : {StrategyKind::Honest, StrategyKind::AbortFlip, StrategyKind::PauliTamper, StrategyKind::UnitaryTamper,
                 StrategyKind::MeasureResend})
    if (to_string(k) == text) return k;
  throw qsim::Error("unknown strategy '" + text +
                    "' (expected honest, abort-flip, pauli-tamper, unitary-tamper or measure-resend)");
}

std::string describe(const AdversarySpec& s) {
  std::ostringstream os;
  os << to_string(s.kind);
  if (s.kind == StrategyKind::Honest) return os.str();
  std::vector<std::string> parts;
  if (s.site) parts.push_back("site=" + dqc::to_string(*s.site));
  if (s.client) parts.push_back("client=" + std::to_string(*s.client));
  if (s.round) parts.push_back("round=" + std::to_string(*s.round));
  if (s.kind == StrategyKind::PauliTamper) parts.push_back("pauli=" + s.pauli);
  if (s.kind == StrategyKind::UnitaryTamper) parts.push_back("qubit=" + std::to_string(s.qubit));
  if (s.kind != StrategyKind::AbortFlip) {
    std::ostringstream p;
    p << s.probability;
    parts.push_back("p=" + p.str());
  }
  os << '(';
  for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? "," : "") << parts[k];
  os << ')';
  return os.str();
}

void check_spec(const AdversarySpec& s) {
  if (!(s.probability >= 0.0 && s.probability <= 1.0)) throw qsim::Error("probability must lie in [0, 1]");
  if (s.kind == StrategyKind::AbortFlip && s.site && *s.site != dqc::Site::Session)
    throw qsim::Error("abort-flip acts on sessions only");
  if (s.kind == StrategyKind::PauliTamper && s.pauli != "uniform") qsim::PauliString::parse(s.pauli);
  if (s.kind == StrategyKind::UnitaryTamper) {
    if (s.unitary.rows() != 2 || s.unitary.cols() != 2) throw qsim::Error("unitary-tamper needs a 2x2 matrix");
    if (!qsim::is_unitary(s.unitary)) throw qsim::Error("unitary-tamper matrix is not unitary");
  }
}

namespace {

class Strategy final : public dqc::ServerAdversary {
 public:
  explicit Strategy(AdversarySpec spec) : s_(std::move(spec)) {}

  bool flip_abort(const SiteInfo& at, qsim::Coins&) override {
    return s_.kind == StrategyKind::AbortFlip && matches(at);
  }

  void on_quantum(const SiteInfo& at, qsim::QuantumSubstrate& sub, const std::vector<QubitId>& qs,
                  qsim::Coins& coins) override {
    if (s_.kind == StrategyKind::Honest || s_.kind == StrategyKind::AbortFlip || qs.empty()) return;
    if (!matches(at)) return;
    if (s_.probability < 1.0 && !coins.bernoulli(s_.probability)) return;
    switch (s_.kind) {
      case StrategyKind::PauliTamper: {
        const auto p = s_.pauli == "uniform" ? qsim::PauliString::random_nonidentity(qs.size(), coins)
                                             : qsim::PauliString::parse(s_.pauli);
        if (p.length() > qs.size()) return;  // string longer than this block: no attack here
        std::vector<QubitId> targets(qs.begin(), qs.begin() + static_cast<long>(p.length()));
        sub.apply_pauli(p, targets);
        break;
      }
      case StrategyKind::UnitaryTamper:
        if (s_.qubit < qs.size()) sub.apply(s_.unitary, {qs[s_.qubit]});
        break;
      case StrategyKind::MeasureResend:
        sub.measure(qs, coins);
        break;
      default:
        break;
    }
  }

 private:
  bool matches(const SiteInfo& at) const {
    if (s_.site && *s_.site != at.site) return false;
    if (s_.client && *s_.client != at.client) return false;
    if (s_.round && *s_.round != at.round) return false;
    return true;
  }

  AdversarySpec s_;
};

}  // namespace

std::unique_ptr<dqc::ServerAdversary> make_adversary(const AdversarySpec& spec) {
  check_spec(spec);
  return std::make_unique<Strategy>(spec);
}

}  // namespace mcdqc::harness
