#pragma once

#include <functional>
#include <vector>

#include "mcdqc/qsim/coins.hpp"

namespace mcdqc::acframe {

/// Coins that walk every branch of a run in turn. Each run replays the choices
/// of the current path and takes the first live option at any new choice point;
/// advance() then moves to the next unexplored path (depth-first).
class ExhaustiveCoins final : public qsim::Coins {
 public:
  std::size_t uniform(std::size_t n) override;
  std::size_t weighted(std::span<const double> probs) override;

  /// Product of the probabilities of the choices on the current path.
  double path_probability() const;
  std::size_t depth() const { return path_.size(); }
  /// Prepare the next path; false once all paths have been visited.
  bool advance();
  /// Rewind to the start of the current path before replaying it.
  void rewind() { cursor_ = 0; }

 private:
  struct Choice {
    std::size_t chosen = 0;
    std::vector<double> probs;
  };
  std::size_t choose(std::vector<double> probs);

  std::vector<Choice> path_;
  std::size_t cursor_ = 0;
};

/// Run `body` once per branch. `body` reads coins.path_probability() after it
/// has made all its draws. Throws BudgetError past `max_paths` branches.
void explore(const std::function<void(ExhaustiveCoins&)>& body, std::size_t max_paths = 2'000'000);

}  // namespace mcdqc::acframe
