#include "mcdqc/qsim/coins.hpp"

#include <climits>
#include <cstdint>

#include "mcdqc/qsim/types.hpp"

namespace mcdqc::qsim {

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

bool Coins::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const double probs[2] = {1.0 - p, p};
  return weighted(probs) == 1;
}

std::size_t SeededCoins::uniform(std::size_t n) {
  if (n == 0) throw Error("uniform(0)");
  // rejection sampling on the top of the range to remove modulo bias
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

double SeededCoins::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t SeededCoins::weighted(std::span<const double> probs) {
  if (probs.empty()) throw Error("weighted() with no outcomes");
  const double u = unit();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last_positive = k;
    acc += probs[k];
    if (u < acc && probs[k] > 0.0) return k;
  }
  return last_positive;
}

}  // namespace mcdqc::qsim
