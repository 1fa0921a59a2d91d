#include "mcdqc/harness/trials.hpp"

#include <chrono>
#include <exception>

#include "mcdqc/multiclient/global_circuit.hpp"
#include "mcdqc/qsim/linalg.hpp"

namespace mcdqc::harness {

using multiclient::ProtocolKind;

void apply_overrides(ScenarioFile& f, const TrialOverrides& o) {
  if (o.seed) f.seed = *o.seed;
  if (o.trials) {
    if (*o.trials == 0) throw multiclient::ValidationError("trials must be positive");
    f.trials = *o.trials;
  }
  if (o.backend) f.options.backend.kind = *o.backend;
  if (o.traps) f.options.backend.traps = *o.traps;
  if (o.rebroadcast) f.options.rebroadcast = *o.rebroadcast;
}

namespace {

TrialResult classify(const multiclient::RunOutcome& out, const multiclient::GlobalOutput& honest) {
  TrialResult r;
  bool any_err = false, any_ok = false, wrong = false;
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    const auto& res = out.results[i];
    if (!res) continue;
    if (qsim::is_err(*res)) {
      any_err = true;
      continue;
    }
    any_ok = true;
    const auto& want = honest.per_client.at(i);
    if (!want) throw qsim::InvariantError("client " + std::to_string(i + 1) + " produced an unexpected output");
    const double d = qsim::trace_distance(std::get<qsim::Matrix>(*res), *want);
    r.max_distance = std::max(r.max_distance, d);
    if (d > kCorruptionDistance) wrong = true;
  }
  if (out.joint && !any_err) {
    const double d = qsim::trace_distance(*out.joint, honest.joint);
    r.max_distance = std::max(r.max_distance, d);
    if (d > kCorruptionDistance) wrong = true;
  }
  r.partial_abort = any_err && any_ok;
  if (wrong) r.kind = TrialClass::Corrupted;
  else if (any_err || out.aborted()) r.kind = TrialClass::Abort;
  else r.kind = TrialClass::HonestAccept;
  return r;
}

multiclient::BoundVariant variant_of(ProtocolKind p) {
  return (p == ProtocolKind::P1 || p == ProtocolKind::P2) ? multiclient::BoundVariant::Protocol1
                                                          : multiclient::BoundVariant::Protocol3;
}

TrialResult run_with(const ScenarioFile& f, const AdversarySpec& spec, std::uint64_t seed,
                     const multiclient::GlobalOutput& honest) {
  const auto start = std::chrono::steady_clock::now();
  qsim::SeededCoins coins(seed);
  auto adv = make_adversary(spec);
  const auto out = multiclient::run_protocol(f.protocol, f.shape, f.options, *adv, coins);
  auto r = classify(out, honest);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

TrialResult run_one_trial(const ScenarioFile& f, const AdversarySpec& spec, std::uint64_t seed) {
  return run_with(f, spec, seed, multiclient::evaluate_global(f.shape));
}

Report run_trials(const ScenarioFile& file, const TrialOverrides& o) {
  ScenarioFile f = file;
  apply_overrides(f, o);

  Report rep;
  rep.scenario = f.name;
  rep.protocol = multiclient::to_string(f.protocol);
  rep.n = f.declared.n;
  rep.m = f.declared.m;
  rep.backend = dqc::to_string(f.options.backend.kind);
  rep.traps = f.options.backend.traps;
  rep.seed = f.seed;
  rep.trials = f.trials;
  rep.rebroadcast = f.options.rebroadcast;
  rep.eps = multiclient::pinned_epsilons(f.options.backend);

  const auto variant = variant_of(f.protocol);
  const double general = multiclient::error_bound(rep.n, rep.m, rep.eps.bv, rep.eps.qsec, rep.eps.bb, variant);
  std::optional<double> two_client;
  if (f.protocol == ProtocolKind::P2 || f.protocol == ProtocolKind::P4)
    two_client = multiclient::two_client_bound(rep.eps.bv, rep.eps.qsec, rep.eps.bb, variant);

  const auto honest = multiclient::evaluate_global(f.shape);
  auto strategies = f.strategies;
  if (strategies.empty()) strategies.push_back(AdversarySpec{});

  for (const auto& spec : strategies) {
    std::vector<TrialResult> results(f.trials);
    std::exception_ptr failure;
    const auto count = static_cast<long long>(f.trials);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long t = 0; t < count; ++t) {
      try {
        results[static_cast<std::size_t>(t)] =
            run_with(f, spec, qsim::derive_seed(f.seed, static_cast<std::uint64_t>(t)), honest);
      } catch (...) {
#pragma omp critical(mcdqc_trial_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    StrategyStats s;
    s.strategy = describe(spec);
    s.trials = f.trials;
    double wall = 0;
    for (const auto& r : results) {
      switch (r.kind) {
        case TrialClass::Abort: ++s.aborts; break;
        case TrialClass::Corrupted: ++s.corrupted; break;
        case TrialClass::HonestAccept: ++s.honest_accepts; break;
      }
      if (r.partial_abort) ++s.totality_violations;
      if (r.kind != TrialClass::Abort) s.max_accepted_distance = std::max(s.max_accepted_distance, r.max_distance);
      wall += r.wall_ms;
    }
    const double n = static_cast<double>(s.trials);
    s.abort_rate = static_cast<double>(s.aborts) / n;
    s.corruption_rate = static_cast<double>(s.corrupted) / n;
    s.honest_accept_rate = static_cast<double>(s.honest_accepts) / n;
    s.abort_ci = wilson_interval(s.aborts, s.trials);
    s.corruption_ci = wilson_interval(s.corrupted, s.trials);
    s.bound_general = general;
    s.bound_general_ok = within_bound(s.corruption_rate, general, s.trials);
    if (two_client) {
      s.bound_two_client = *two_client;
      s.bound_two_client_ok = within_bound(s.corruption_rate, *two_client, s.trials);
    }
    s.mean_wall_ms = wall / n;
    rep.strategies.push_back(std::move(s));
  }
  return rep;
}

}  // namespace mcdqc::harness
