#include "mcdqc/acframe/exhaustive.hpp"

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::acframe {

namespace {
bool live(double p) { return p > qsim::tol::kBranch; }
}  // namespace

std::size_t ExhaustiveCoins::choose(std::vector<double> probs) {
  if (cursor_ < path_.size()) {
    const auto& c = path_[cursor_];
    if (c.probs.size() != probs.size())
      throw qsim::InvariantError("exhaustive replay diverged: choice arity changed");
    ++cursor_;
    return c.chosen;
  }
  std::size_t first = 0;
  while (first < probs.size() && !live(probs[first])) ++first;
  if (first == probs.size()) throw qsim::InvariantError("choice point with no live option");
  path_.push_back(Choice{first, std::move(probs)});
  ++cursor_;
  return first;
}

std::size_t ExhaustiveCoins::uniform(std::size_t n) {
  if (n == 0) throw qsim::Error("uniform(0)");
  return choose(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::size_t ExhaustiveCoins::weighted(std::span<const double> probs) {
  return choose(std::vector<double>(probs.begin(), probs.end()));
}

double ExhaustiveCoins::path_probability() const {
  double p = 1.0;
  for (std::size_t k = 0; k < cursor_; ++k) p *= path_[k].probs[path_[k].chosen];
  return p;
}

bool ExhaustiveCoins::advance() {
  // choices past the cursor were not reached on the last replay
  path_.resize(cursor_);
  while (!path_.empty()) {
    auto& c = path_.back();
    std::size_t next = c.chosen + 1;
    while (next < c.probs.size() && !live(c.probs[next])) ++next;
    if (next < c.probs.size()) {
      c.chosen = next;
      cursor_ = 0;
      return true;
    }
    path_.pop_back();
  }
  cursor_ = 0;
  return false;
}

void explore(const std::function<void(ExhaustiveCoins&)>& body, std::size_t max_paths) {
  ExhaustiveCoins coins;
  std::size_t paths = 0;
  do {
    if (++paths > max_paths)
      throw qsim::BudgetError("exhaustive exploration exceeded " + std::to_string(max_paths) + " paths");
    coins.rewind();
    body(coins);
  } while (coins.advance());
}

}  // namespace mcdqc::acframe
