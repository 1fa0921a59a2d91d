#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace mcdqc::qsim {

/// Source of randomness for every probabilistic step (key sampling, measurement,
/// adversary coin flips). Passed explicitly; never ambient.
class Coins {
 public:
  virtual ~Coins() = default;

  /// Uniform draw from [0, n). n must be positive.
  virtual std::size_t uniform(std::size_t n) = 0;

  /// Draw an index with the given probabilities (summing to 1 within tolerance).
  virtual std::size_t weighted(std::span<const double> probs) = 0;

  /// Bernoulli draw. Implemented through weighted() so exhaustive
  /// explorers branch on it like any other choice.
  bool bernoulli(double p);
};

/// splitmix64 finaliser; also used to derive per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial seed: splitmix64(master + (trial + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial);

/// Coins backed by a seeded 64-bit Mersenne Twister. The integer and real
/// mappings are fixed here rather than left to <random> distributions so the
/// draw sequence is identical across standard libraries.
class SeededCoins final : public Coins {
 public:
  explicit SeededCoins(std::uint64_t seed) : engine_(seed) {}

  std::size_t uniform(std::size_t n) override;
  std::size_t weighted(std::span<const double> probs) override;
  double unit();  // uniform in [0, 1)

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcdqc::qsim
