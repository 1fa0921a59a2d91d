#include "mcdqc/acframe/advantage.hpp"

#include <algorithm>
#include <cmath>

#include "mcdqc/acframe/exhaustive.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::acframe {

using qsim::Error;
using qsim::Matrix;
using qsim::QubitId;

View collect_view(const World& w, const std::vector<Envelope>& observed) {
  View v;
  for (const auto& e : observed) {
    v.label += e.destination.str();
    v.label += ':';
    v.label += to_string(e.kind);
    v.label += '=';
    v.label += payload_digest(e);
    v.label += ';';
    if (e.kind == EnvelopeKind::QubitHandles)
      for (auto q : e.qubits())
        if (w.substrate.contains(q)) v.held.push_back(q);
  }
  for (auto q : w.substrate.owned_by(kDistinguisher))
    if (std::find(v.held.begin(), v.held.end(), q) == v.held.end()) v.held.push_back(q);
  return v;
}

namespace {

std::vector<Envelope> drive(World& w, System& sys, const Strategy& strategy) {
  auto observed = sys.activate(w);
  auto rest = strategy(w, sys);
  observed.insert(observed.end(), rest.begin(), rest.end());
  return observed;
}

}  // namespace

ViewDistribution exact_view(const SystemFactory& make, const Strategy& strategy, std::size_t max_paths) {
  ViewDistribution dist;
  explore(
      [&](ExhaustiveCoins& coins) {
        Transcript transcript;
        World w(coins, &transcript);
        auto sys = make();
        const auto observed = drive(w, *sys, strategy);
        transcript.check_structure();
        const auto view = collect_view(w, observed);
        const double p = coins.path_probability();
        Matrix rho = view.held.empty() ? Matrix::Identity(1, 1) : w.substrate.reduced(view.held);
        auto it = dist.find(view.label);
        if (it == dist.end()) {
          dist.emplace(view.label, p * rho);
        } else {
          if (it->second.rows() != rho.rows()) throw qsim::InvariantError("view dimension changed under one label");
          it->second += p * rho;
        }
      },
      max_paths);
  return dist;
}

double view_distance(const ViewDistribution& a, const ViewDistribution& b) {
  double total = 0;
  for (const auto& [label, rho] : a) {
    auto it = b.find(label);
    if (it == b.end()) {
      total += qsim::trace_norm(rho);
    } else {
      if (it->second.rows() != rho.rows()) {
        total += qsim::trace_norm(rho) + qsim::trace_norm(it->second);
      } else {
        const Matrix diff = rho - it->second;
        total += qsim::trace_norm(0.5 * (diff + diff.adjoint()));
      }
    }
  }
  for (const auto& [label, rho] : b)
    if (!a.count(label)) total += qsim::trace_norm(rho);
  return std::clamp(0.5 * total, 0.0, 1.0);
}

void require_same_signature(const System& a, const System& b) {
  auto sa = a.outside(), sb = b.outside();
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) throw Error("interface signatures differ: " + a.name() + " vs " + b.name());
  if (!a.inside().empty() || !b.inside().empty()) throw Error("distinguishers need closed systems");
}

double exact_advantage(const SystemFactory& a, const SystemFactory& b, const Strategy& strategy,
                       std::size_t max_paths) {
  require_same_signature(*a(), *b());
  return view_distance(exact_view(a, strategy, max_paths), exact_view(b, strategy, max_paths));
}

McAdvantage mc_advantage(const SystemFactory& a, const SystemFactory& b, const Strategy& strategy,
                         std::size_t trials, std::uint64_t seed) {
  if (trials < 100) throw Error("mc_advantage needs at least 100 trials");
  require_same_signature(*a(), *b());

  std::vector<std::string> outcome(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    qsim::SeededCoins coins(qsim::derive_seed(seed, t));
    Transcript transcript;
    World w(coins, &transcript);
    auto sys = (t % 2 == 0) ? a() : b();
    const auto observed = drive(w, *sys, strategy);
    transcript.check_structure();
    auto view = collect_view(w, observed);
    std::string o = std::move(view.label);
    if (!view.held.empty()) {
      o += '|';
      for (int bit : w.substrate.measure(view.held, coins)) o += static_cast<char>('0' + bit);
    }
    outcome[t] = std::move(o);
  }

  // trial t belongs to side t % 2 and to the training half iff t < trials / 2
  std::map<std::string, std::pair<std::size_t, std::size_t>> train;
  const std::size_t split = trials / 2;
  for (std::size_t t = 0; t < split; ++t) {
    auto& c = train[outcome[t]];
    (t % 2 == 0 ? c.first : c.second) += 1;
  }
  auto guess_a = [&](const std::string& o) {
    auto it = train.find(o);
    return it != train.end() && it->second.first > it->second.second;
  };
  std::size_t na = 0, nb = 0, ga = 0, gb = 0;
  for (std::size_t t = split; t < trials; ++t) {
    const bool g = guess_a(outcome[t]);
    if (t % 2 == 0) {
      ++na;
      ga += g;
    } else {
      ++nb;
      gb += g;
    }
  }
  const double pa = static_cast<double>(ga) / static_cast<double>(na);
  const double pb = static_cast<double>(gb) / static_cast<double>(nb);
  McAdvantage r;
  r.trials = trials;
  r.estimate = pa - pb;
  r.half_width = 1.96 * std::sqrt(pa * (1 - pa) / static_cast<double>(na) + pb * (1 - pb) / static_cast<double>(nb));
  return r;
}

}  // namespace mcdqc::acframe
