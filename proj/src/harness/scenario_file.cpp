#include "mcdqc/harness/scenario_file.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mcdqc/qsim/gates.hpp"

namespace mcdqc::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Line {
  std::size_t number = 0;
  std::string key, value;
};

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
    throw ParseError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  template <class T>
  T number(const Line& l) const {
    T out{};
    const auto* first = l.value.data();
    const auto* last = first + l.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || l.value.empty())
      fail(l.number, "field '" + l.key + "': expected a number, got '" + l.value + "'");
    return out;
  }

  double real(const Line& l, const std::string& text) const {
    try {
      std::size_t used = 0;
      const double d = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return d;
    } catch (const std::exception&) {
      fail(l.number, "field '" + l.key + "': expected a real number, got '" + text + "'");
    }
  }

  bool on_off(const Line& l) const {
    if (l.value == "on" || l.value == "true" || l.value == "1") return true;
    if (l.value == "off" || l.value == "false" || l.value == "0") return false;
    fail(l.number, "field '" + l.key + "': expected on or off");
  }

  template <class F>
  auto wrap(const Line& l, F&& f) const {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const qsim::Error& e) {
      fail(l.number, "field '" + l.key + "': " + e.what());
    }
  }

  std::string source_;
};

// "<i>.input" / "<i>.round<h>"
bool split_client_key(const std::string& key, std::size_t& client, std::string& rest) {
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0) return false;
  const auto head = key.substr(0, dot);
  const auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), client);
  if (ec != std::errc() || p != head.data() + head.size()) return false;
  rest = key.substr(dot + 1);
  return true;
}

}  // namespace

void revalidate(ScenarioFile& f) {
  using multiclient::ProtocolKind;
  if (f.protocol == ProtocolKind::P1 || f.protocol == ProtocolKind::P3) {
    f.shape = multiclient::validate_scenario(f.declared);
    return;
  }
  const auto& d = f.declared;
  if (d.n != 2 || d.m != 1 || d.clients.size() != 2 || !d.wires.empty() || !d.clients[1].inputs.empty())
    throw multiclient::ValidationError(
        "two-client protocols are written with n=2, m=1, input at client 1 only and no [wiring] entries");
  const auto& u1 = d.clients[0].unitaries;
  const auto& u2 = d.clients[1].unitaries;
  f.shape = multiclient::validate_scenario(multiclient::two_client_scenario(
      d.clients[0].inputs, u1.empty() ? qsim::GateList{} : u1[0], u2.empty() ? qsim::GateList{} : u2[0]));
}

ScenarioFile parse_scenario_text(const std::string& text, const std::string& source) {
  Parser p(source);
  std::vector<Line> run, clients, wiring;
  std::vector<std::vector<Line>> adversaries;
  std::string section;

  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    const auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') p.fail(number, "unterminated section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section == "adversary") adversaries.emplace_back();
      else if (section != "run" && section != "clients" && section != "wiring")
        p.fail(number, "unknown section [" + section + "] (expected run, clients, wiring or adversary)");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) p.fail(number, "expected key = value");
    Line l{number, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1))};
    if (l.key.empty()) p.fail(number, "empty key");
    if (section.empty()) p.fail(number, "entry outside any section");
    if (section == "run") run.push_back(l);
    else if (section == "clients") clients.push_back(l);
    else if (section == "wiring") wiring.push_back(l);
    else adversaries.back().push_back(l);
  }

  ScenarioFile f;
  f.name = source;
  bool have_n = false, have_m = false;
  std::map<std::string, std::size_t> seen;
  for (const auto& l : run) {
    if (seen.count(l.key)) p.fail(l.number, "duplicate key '" + l.key + "' (first on line " + std::to_string(seen[l.key]) + ")");
    seen[l.key] = l.number;
    if (l.key == "name") f.name = l.value;
    else if (l.key == "protocol") f.protocol = p.wrap(l, [&] { return multiclient::parse_protocol(l.value); });
    else if (l.key == "n") { f.declared.n = p.number<std::size_t>(l); have_n = true; }
    else if (l.key == "m") { f.declared.m = p.number<std::size_t>(l); have_m = true; }
    else if (l.key == "backend") f.options.backend.kind = p.wrap(l, [&] { return dqc::parse_backend(l.value); });
    else if (l.key == "traps") f.options.backend.traps = p.number<std::size_t>(l);
    else if (l.key == "trials") f.trials = p.number<std::size_t>(l);
    else if (l.key == "seed") f.seed = p.number<std::uint64_t>(l);
    else if (l.key == "rebroadcast") f.options.rebroadcast = p.on_off(l);
    else p.fail(l.number, "unknown [run] key '" + l.key + "'");
  }
  if (!have_n || !have_m) p.fail(number, "[run] must give n and m");
  if (f.declared.n == 0 || f.declared.n > qsim::kMaxQubits) p.fail(seen["n"], "n must lie in 1.." + std::to_string(qsim::kMaxQubits));
  if (f.declared.m == 0 || f.declared.m > 16) p.fail(seen["m"], "m must lie in 1..16");
  f.declared.clients.resize(f.declared.n);
  for (auto& c : f.declared.clients) c.unitaries.resize(f.declared.m);

  seen.clear();
  for (const auto& l : clients) {
    if (seen.count(l.key)) p.fail(l.number, "duplicate key '" + l.key + "'");
    seen[l.key] = l.number;
    std::size_t i = 0;
    std::string rest;
    if (!split_client_key(l.key, i, rest)) p.fail(l.number, "expected <client>.input or <client>.round<h>, got '" + l.key + "'");
    if (i < 1 || i > f.declared.n) p.fail(l.number, "client " + std::to_string(i) + " outside 1.." + std::to_string(f.declared.n));
    auto& c = f.declared.clients[i - 1];
    if (rest == "input") {
      c.inputs.clear();
      for (char ch : l.value) {
        if (ch == ' ' || ch == ',') continue;
        c.inputs.push_back(p.wrap(l, [&] { return qsim::parse_basis_state(std::string(1, ch)); }));
      }
    } else if (rest.rfind("round", 0) == 0) {
      std::size_t h = 0;
      const auto digits = rest.substr(5);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), h);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || h < 1 || h > f.declared.m)
        p.fail(l.number, "round in '" + l.key + "' must lie in 1.." + std::to_string(f.declared.m));
      c.unitaries[h - 1] = p.wrap(l, [&] { return qsim::GateList::parse(l.value); });
    } else {
      p.fail(l.number, "expected <client>.input or <client>.round<h>, got '" + l.key + "'");
    }
  }

  for (const auto& l : wiring) {
    multiclient::Wire w;
    const auto arrow = l.key.find("->");
    const auto at = l.key.find('@');
    if (arrow == std::string::npos || at == std::string::npos || at < arrow)
      p.fail(l.number, "expected <from>-><to>@<round>, got '" + l.key + "'");
    const auto field = [&](std::string s) {
      s = trim(s);
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        p.fail(l.number, "expected <from>-><to>@<round>, got '" + l.key + "'");
      return v;
    };
    w.from = field(l.key.substr(0, arrow));
    w.to = field(l.key.substr(arrow + 2, at - arrow - 2));
    w.round = field(l.key.substr(at + 1));
    std::string labels = l.value;
    for (auto& ch : labels)
      if (ch == ',') ch = ' ';
    std::istringstream ls(labels);
    std::string tok;
    while (ls >> tok) {
      Line t{l.number, l.key, tok};
      w.labels.push_back(p.number<std::size_t>(t));
    }
    f.declared.wires.push_back(std::move(w));
  }

  for (const auto& section_lines : adversaries) {
    AdversarySpec s;
    bool have_kind = false;
    for (const auto& l : section_lines) {
      if (l.key == "strategy") {
        s.kind = p.wrap(l, [&] { return parse_strategy(l.value); });
        have_kind = true;
      } else if (l.key == "site") {
        s.site = p.wrap(l, [&] { return dqc::parse_site(l.value); });
      } else if (l.key == "client") {
        s.client = p.number<std::size_t>(l);
      } else if (l.key == "round") {
        s.round = p.number<std::size_t>(l);
      } else if (l.key == "pauli") {
        s.pauli = l.value;
      } else if (l.key == "probability") {
        s.probability = p.real(l, l.value);
      } else if (l.key == "qubit") {
        s.qubit = p.number<std::size_t>(l);
      } else if (l.key == "gate") {
        s.unitary = p.wrap(l, [&] {
          const auto kind = qsim::parse_gate_kind(l.value);
          if (qsim::arity(kind) != 1) throw qsim::Error("unitary-tamper takes a one-qubit gate");
          return qsim::Matrix(qsim::gate_matrix(kind));
        });
      } else if (l.key == "matrix") {
        std::istringstream ms(l.value);
        std::vector<double> v;
        std::string tok;
        while (ms >> tok) v.push_back(p.real(l, tok));
        if (v.size() != 8) p.fail(l.number, "matrix takes 8 numbers: re/im of entries 00 01 10 11");
        s.unitary = qsim::Matrix(2, 2);
        for (int k = 0; k < 4; ++k)
          s.unitary(k / 2, k % 2) = qsim::Complex(v[static_cast<std::size_t>(2 * k)], v[static_cast<std::size_t>(2 * k + 1)]);
      } else {
        p.fail(l.number, "unknown [adversary] key '" + l.key + "'");
      }
    }
    const std::size_t where = section_lines.empty() ? number : section_lines.front().number;
    if (!have_kind) p.fail(where, "[adversary] section without a strategy");
    try {
      check_spec(s);
    } catch (const qsim::Error& e) {
      p.fail(where, e.what());
    }
    f.strategies.push_back(std::move(s));
  }
  if (f.trials == 0) p.fail(seen.count("trials") ? seen["trials"] : number, "trials must be positive");

  revalidate(f);
  return f;
}

ScenarioFile parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  auto f = parse_scenario_text(text.str(), path);
  if (f.name == path) f.name = std::filesystem::path(path).stem().string();
  return f;
}

}  // namespace mcdqc::harness
