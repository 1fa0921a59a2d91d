#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcdqc/authcode/oracle.hpp"
#include "mcdqc/harness/blindness.hpp"
#include "mcdqc/harness/report.hpp"
#include "mcdqc/harness/trials.hpp"
#include "mcdqc/multiclient/bounds.hpp"
#include "mcdqc/qsim/clifford.hpp"

namespace {

using namespace mcdqc;

int write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  out << text;
  return 0;
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-client delegated quantum computation simulator"};
  app.require_subcommand(1);

  std::string format = "human", out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials, traps;
  std::string backend, rebroadcast;

  auto* run = app.add_subcommand("run", "Run the trials of a scenario file");
  std::string scenario;
  run->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--trials", trials, "Trials per strategy");
  run->add_option("--backend", backend, "ideal or clifford-auth")->check(CLI::IsMember({"ideal", "clifford-auth"}));
  run->add_option("--traps", traps, "Trap qubits per block");
  run->add_option("--rebroadcast", rebroadcast, "on or off")->check(CLI::IsMember({"on", "off"}));

  auto* blind = app.add_subcommand("blindness", "Compare the key-averaged server views of two scenarios");
  std::string file_a, file_b;
  blind->add_option("a", file_a, "First scenario")->required()->check(CLI::ExistingFile);
  blind->add_option("b", file_b, "Second scenario")->required()->check(CLI::ExistingFile);

  auto* bound = app.add_subcommand("bound", "Evaluate the error bounds");
  std::size_t bn = 0, bm = 0;
  std::vector<double> eps;
  bound->add_option("n", bn, "Clients")->required();
  bound->add_option("m", bm, "Rounds")->required();
  bound->add_option("eps", eps, "eps_bv eps_qsec eps_bb (default: pinned values of --backend)")->expected(0, 3);
  bound->add_option("--backend", backend, "ideal or clifford-auth")->check(CLI::IsMember({"ideal", "clifford-auth"}));

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto* detection = oracle->add_subcommand("detection", "Pauli attack detection over all keys");
  std::size_t om = 1, ot = 1;
  detection->add_option("m", om, "Message qubits")->required();
  detection->add_option("t", ot, "Trap qubits")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Enumerations");
  enumerate->require_subcommand(1);
  auto* cliffords = enumerate->add_subcommand("cliffords", "List the Clifford group by its Pauli images");
  std::size_t cn = 1;
  cliffords->add_option("n", cn, "Qubits (1 or 2)")->required();

  for (auto* sub : {run, blind, bound, detection, cliffords}) {
    sub->add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--out", out_path, "Write the output to a file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const auto fmt = harness::parse_format(format);

    if (run->parsed()) {
      auto f = harness::parse_scenario(scenario);
      harness::TrialOverrides o;
      o.seed = seed;
      o.trials = trials;
      o.traps = traps;
      if (!backend.empty()) o.backend = dqc::parse_backend(backend);
      if (!rebroadcast.empty()) o.rebroadcast = rebroadcast == "on";
      return write_out(harness::emit_report(harness::run_trials(f, o), fmt), out_path);
    }

    if (blind->parsed()) {
      const auto a = harness::parse_scenario(file_a);
      const auto b = harness::parse_scenario(file_b);
      const auto r = harness::blindness_check(a, b);
      harness::Report rep;
      rep.scenario = a.name + "|" + b.name;
      rep.protocol = multiclient::to_string(a.protocol);
      rep.n = a.declared.n;
      rep.m = a.declared.m;
      rep.backend = "ideal";
      rep.traps = a.options.backend.traps;
      rep.seed = a.seed;
      rep.trials = 1;
      rep.rebroadcast = a.options.rebroadcast;
      rep.eps = multiclient::pinned_epsilons(dqc::BackendConfig{});
      rep.blindness.push_back({a.name, b.name, r.distance, r.snapshots});
      return write_out(harness::emit_report(rep, fmt), out_path);
    }

    if (bound->parsed()) {
      dqc::BackendConfig cfg;
      if (!backend.empty()) cfg.kind = dqc::parse_backend(backend);
      auto e = multiclient::pinned_epsilons(cfg);
      if (!eps.empty()) {
        if (eps.size() != 3) throw qsim::Error("give all three of eps_bv eps_qsec eps_bb, or none");
        e = {eps[0], eps[2], eps[1]};
      }
      using multiclient::BoundVariant;
      std::vector<std::pair<std::string, double>> rows{
          {"protocol1.general", multiclient::error_bound(bn, bm, e.bv, e.qsec, e.bb, BoundVariant::Protocol1)},
          {"protocol3.general", multiclient::error_bound(bn, bm, e.bv, e.qsec, e.bb, BoundVariant::Protocol3)}};
      if (bn == 2 && bm == 1) {
        rows.emplace_back("protocol1.two_client", multiclient::two_client_bound(e.bv, e.qsec, e.bb, BoundVariant::Protocol1));
        rows.emplace_back("protocol3.two_client", multiclient::two_client_bound(e.bv, e.qsec, e.bb, BoundVariant::Protocol3));
      }
      std::ostringstream os;
      if (fmt == harness::ReportFormat::Machine) {
        os << "n=" << bn << "\nm=" << bm << "\neps.bv=" << real(e.bv) << "\neps.qsec=" << real(e.qsec)
           << "\neps.bb=" << real(e.bb) << "\n";
        for (const auto& [k, v] : rows) os << "bound." << k << "=" << real(v) << "\n";
      } else {
        os << "n=" << bn << " m=" << bm << "  eps_bv=" << e.bv << " eps_qsec=" << e.qsec << " eps_bb=" << e.bb << "\n";
        for (const auto& [k, v] : rows) {
          char line[96];
          std::snprintf(line, sizeof line, "  %-22s %.10f\n", k.c_str(), v);
          os << line;
        }
      }
      return write_out(os.str(), out_path);
    }

    if (detection->parsed()) {
      std::ostringstream os;
      double worst = 0;
      for (const auto& p : qsim::PauliString::all_nonidentity(om + ot)) {
        const auto d = authcode::exact_detection_probability(om, ot, p);
        worst = std::max(worst, d.epsilon());
        if (fmt == harness::ReportFormat::Machine)
          os << "attack." << p.str() << ".p_detect=" << real(d.p_detect) << "\nattack." << p.str()
             << ".p_harmless=" << real(d.p_harmless) << "\nattack." << p.str() << ".epsilon=" << real(d.epsilon()) << "\n";
        else {
          char line[96];
          std::snprintf(line, sizeof line, "%-6s p_detect=%.12f p_harmless=%.12f eps=%.12f\n", p.str().c_str(),
                        d.p_detect, d.p_harmless, d.epsilon());
          os << line;
        }
      }
      if (fmt == harness::ReportFormat::Machine) os << "epsilon.max=" << real(worst) << "\n";
      else os << "max eps = " << real(worst) << "\n";
      return write_out(os.str(), out_path);
    }

    if (cliffords->parsed()) {
      std::ostringstream os;
      const auto& group = qsim::enumerate_clifford(cn);
      os << (fmt == harness::ReportFormat::Machine ? "order=" : "order ") << group.size() << "\n";
      for (const auto& c : group) {
        if (fmt == harness::ReportFormat::Machine) os << "clifford." << c.index << "=";
        else os << c.index << ":";
        for (std::size_t q = 0; q < cn; ++q)
          for (char g : {'X', 'Z'}) {
            std::string s(cn, 'I');
            s[q] = g;
            os << (fmt == harness::ReportFormat::Machine ? (q || g == 'Z' ? "," : "") : " ") << s << "->"
               << qsim::conjugate(c, qsim::PauliString::parse(s)).str();
          }
        os << "\n";
      }
      return write_out(os.str(), out_path);
    }
  } catch (const qsim::InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
