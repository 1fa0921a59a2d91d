#include "mcdqc/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::harness {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr const char* kFormatTag = "mcdqc-report/1";

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

class Writer {
 public:
  void put(const std::string& key, const std::string& value) { os_ << key << '=' << one_line(value) << '\n'; }
  void put(const std::string& key, double value) { put(key, real(value)); }
  void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }
  void put(const std::string& key, std::uint64_t value, int) { put(key, std::to_string(value)); }
  void put(const std::string& key, bool value) { put(key, flag(value)); }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

class Fields {
 public:
  explicit Fields(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw qsim::Error("report line " + std::to_string(number) + ": expected key=value");
      const auto key = line.substr(0, eq);
      if (!kv_.emplace(key, line.substr(eq + 1)).second)
        throw qsim::Error("report line " + std::to_string(number) + ": duplicate key " + key);
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  const std::string& str(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw qsim::Error("report: missing key " + key);
    return it->second;
  }
  double real(const std::string& key) const {
    try {
      return std::stod(str(key));
    } catch (const std::logic_error&) {
      throw qsim::Error("report: bad real for " + key);
    }
  }
  std::uint64_t integer(const std::string& key) const {
    try {
      return std::stoull(str(key));
    } catch (const std::logic_error&) {
      throw qsim::Error("report: bad integer for " + key);
    }
  }
  bool boolean(const std::string& key) const {
    const auto& v = str(key);
    if (v == "true") return true;
    if (v == "false") return false;
    throw qsim::Error("report: bad flag for " + key);
  }

 private:
  std::map<std::string, std::string> kv_;
};

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string human(const Report& r) {
  std::ostringstream os;
  os << "scenario   " << r.scenario << "\n"
     << "protocol   " << r.protocol << "  (n=" << r.n << ", m=" << r.m << ")\n"
     << "backend    " << r.backend << ", traps=" << r.traps << ", rebroadcast=" << (r.rebroadcast ? "on" : "off") << "\n"
     << "seed       " << r.seed << ", trials=" << r.trials << "\n"
     << "epsilons   bv=" << fixed(r.eps.bv, 6) << " bb=" << fixed(r.eps.bb, 6) << " qsec=" << fixed(r.eps.qsec, 6) << "\n";

  if (!r.strategies.empty()) {
    const bool two = std::any_of(r.strategies.begin(), r.strategies.end(),
                                 [](const StrategyStats& s) { return s.bound_two_client.has_value(); });
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"strategy", "trials", "abort", "corrupt", "95% CI", "honest", "bound", "ok"};
    if (two) {
      head.push_back("bound(2c)");
      head.push_back("ok");
    }
    head.push_back("ms/trial");
    rows.push_back(head);
    for (const auto& s : r.strategies) {
      std::vector<std::string> row{s.strategy,
                                   std::to_string(s.trials),
                                   fixed(s.abort_rate, 4),
                                   fixed(s.corruption_rate, 4),
                                   "[" + fixed(s.corruption_ci.low, 4) + ", " + fixed(s.corruption_ci.high, 4) + "]",
                                   fixed(s.honest_accept_rate, 4),
                                   fixed(s.bound_general, 4),
                                   s.bound_general_ok ? "yes" : "NO"};
      if (two) {
        row.push_back(s.bound_two_client ? fixed(*s.bound_two_client, 4) : "-");
        row.push_back(s.bound_two_client_ok ? (*s.bound_two_client_ok ? "yes" : "NO") : "-");
      }
      row.push_back(fixed(s.mean_wall_ms, 3));
      rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c == 0) os << std::left << std::setw(static_cast<int>(width[c])) << row[c];
        else os << "  " << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
      os << "\n";
    }
    for (const auto& s : r.strategies)
      if (s.totality_violations)
        os << "warning: " << s.strategy << ": " << s.totality_violations << " trials with a partial abort\n";
  }

  if (!r.blindness.empty()) {
    os << "\nblindness (trace distance of key-averaged server views)\n";
    for (const auto& b : r.blindness)
      os << "  " << b.a << " vs " << b.b << ": " << std::scientific << std::setprecision(3) << b.distance
         << std::defaultfloat << " over " << b.snapshots << " snapshots\n";
  }
  return os.str();
}

std::string machine(const Report& r) {
  Writer w;
  w.put("report.format", std::string(kFormatTag));
  w.put("scenario.name", r.scenario);
  w.put("scenario.protocol", r.protocol);
  w.put("scenario.n", r.n);
  w.put("scenario.m", r.m);
  w.put("run.backend", r.backend);
  w.put("run.traps", r.traps);
  w.put("run.seed", r.seed, 0);
  w.put("run.trials", r.trials);
  w.put("run.rebroadcast", r.rebroadcast);
  w.put("eps.bv", r.eps.bv);
  w.put("eps.bb", r.eps.bb);
  w.put("eps.qsec", r.eps.qsec);
  w.put("strategies.count", r.strategies.size());
  for (std::size_t k = 0; k < r.strategies.size(); ++k) {
    const auto& s = r.strategies[k];
    const auto p = "strategy." + std::to_string(k) + ".";
    w.put(p + "name", s.strategy);
    w.put(p + "trials", s.trials);
    w.put(p + "aborts", s.aborts);
    w.put(p + "corrupted", s.corrupted);
    w.put(p + "honest_accepts", s.honest_accepts);
    w.put(p + "totality_violations", s.totality_violations);
    w.put(p + "abort_rate", s.abort_rate);
    w.put(p + "abort_ci_low", s.abort_ci.low);
    w.put(p + "abort_ci_high", s.abort_ci.high);
    w.put(p + "corruption_rate", s.corruption_rate);
    w.put(p + "corruption_ci_low", s.corruption_ci.low);
    w.put(p + "corruption_ci_high", s.corruption_ci.high);
    w.put(p + "honest_accept_rate", s.honest_accept_rate);
    w.put(p + "max_accepted_distance", s.max_accepted_distance);
    w.put(p + "bound.general", s.bound_general);
    w.put(p + "bound.general_ok", s.bound_general_ok);
    if (s.bound_two_client) {
      w.put(p + "bound.two_client", *s.bound_two_client);
      w.put(p + "bound.two_client_ok", s.bound_two_client_ok.value_or(false));
    }
  }
  w.put("blindness.count", r.blindness.size());
  for (std::size_t k = 0; k < r.blindness.size(); ++k) {
    const auto& b = r.blindness[k];
    const auto p = "blindness." + std::to_string(k) + ".";
    w.put(p + "a", b.a);
    w.put(p + "b", b.b);
    w.put(p + "distance", b.distance);
    w.put(p + "snapshots", b.snapshots);
  }
  return w.str();
}

}  // namespace

Interval wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = kZ95 * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

bool within_bound(double rate, double bound, std::size_t trials) {
  if (trials == 0) return true;
  const double b = std::clamp(bound, 0.0, 1.0);
  return rate <= b + 3.0 * std::sqrt(b * (1 - b) / static_cast<double>(trials));
}

ReportFormat parse_format(const std::string& text) {
  if (text == "human") return ReportFormat::Human;
  if (text == "machine") return ReportFormat::Machine;
  throw qsim::Error("unknown format '" + text + "' (expected human or machine)");
}

std::string emit_report(const Report& r, ReportFormat format) {
  return format == ReportFormat::Human ? human(r) : machine(r);
}

Report parse_machine_report(const std::string& text) {
  const Fields f(text);
  if (f.str("report.format") != kFormatTag) throw qsim::Error("report: unknown format " + f.str("report.format"));
  Report r;
  r.scenario = f.str("scenario.name");
  r.protocol = f.str("scenario.protocol");
  r.n = f.integer("scenario.n");
  r.m = f.integer("scenario.m");
  r.backend = f.str("run.backend");
  r.traps = f.integer("run.traps");
  r.seed = f.integer("run.seed");
  r.trials = f.integer("run.trials");
  r.rebroadcast = f.boolean("run.rebroadcast");
  r.eps.bv = f.real("eps.bv");
  r.eps.bb = f.real("eps.bb");
  r.eps.qsec = f.real("eps.qsec");
  const auto count = f.integer("strategies.count");
  for (std::size_t k = 0; k < count; ++k) {
    const auto p = "strategy." + std::to_string(k) + ".";
    StrategyStats s;
    s.strategy = f.str(p + "name");
    s.trials = f.integer(p + "trials");
    s.aborts = f.integer(p + "aborts");
    s.corrupted = f.integer(p + "corrupted");
    s.honest_accepts = f.integer(p + "honest_accepts");
    s.totality_violations = f.integer(p + "totality_violations");
    s.abort_rate = f.real(p + "abort_rate");
    s.abort_ci = {f.real(p + "abort_ci_low"), f.real(p + "abort_ci_high")};
    s.corruption_rate = f.real(p + "corruption_rate");
    s.corruption_ci = {f.real(p + "corruption_ci_low"), f.real(p + "corruption_ci_high")};
    s.honest_accept_rate = f.real(p + "honest_accept_rate");
    s.max_accepted_distance = f.real(p + "max_accepted_distance");
    s.bound_general = f.real(p + "bound.general");
    s.bound_general_ok = f.boolean(p + "bound.general_ok");
    if (f.has(p + "bound.two_client")) {
      s.bound_two_client = f.real(p + "bound.two_client");
      s.bound_two_client_ok = f.boolean(p + "bound.two_client_ok");
    }
    r.strategies.push_back(std::move(s));
  }
  const auto blind = f.integer("blindness.count");
  for (std::size_t k = 0; k < blind; ++k) {
    const auto p = "blindness." + std::to_string(k) + ".";
    r.blindness.push_back({f.str(p + "a"), f.str(p + "b"), f.real(p + "distance"), f.integer(p + "snapshots")});
  }
  return r;
}

}  // namespace mcdqc::harness
