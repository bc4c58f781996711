#pragma once

#include <cstdint>

namespace privm {

// Counter-based pseudorandom stream. Every draw is a pure function of
// (seed, counter), so runs replay bit-for-bit under a fixed seed and
// independent substreams can be split off per trial without shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Next raw 64-bit word.
  std::uint64_t next_u64();

  // Uniform draw in the open interval (0, 1).
  double next_uniform();

  // Laplace draw with scale sigma: P(|X| > t) = exp(-t / sigma),
  // via the inverse CDF of a single uniform.
  double next_laplace(double sigma);

  // Independent stream derived from (seed, stream_id). Deterministic and
  // decoupled from this stream's counter position.
  CounterRng substream(std::uint64_t stream_id) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace privm
