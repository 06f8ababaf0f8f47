#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ctxcalc {

// Seeded source for the choice operators. The engine is mt19937_64, whose
// output sequence is fixed by the standard, and pick() uses rejection
// sampling, so a seed selects the same candidates on every platform.
class ChoiceRng {
 public:
  explicit ChoiceRng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  // Uniform index in [0, n). n must be positive.
  std::size_t pick(std::size_t n);

  std::uint64_t seed() const noexcept { return seed_; }
  void reseed(std::uint64_t seed) {
    seed_ = seed;
    engine_.seed(seed);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace ctxcalc
