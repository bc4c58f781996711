#include "privm/rng.hpp"

#include <cmath>

#include "privm/errors.hpp"

namespace privm {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer: bijective avalanche mix of one 64-bit word.
std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGamma);
}

double CounterRng::next_uniform() {
  // 53 mantissa bits, offset by half an ulp so 0 and 1 are never returned.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double CounterRng::next_laplace(double sigma) {
  if (!(sigma > 0.0)) {
    throw argument_error("laplace scale must be positive");
  }
  const double u = next_uniform() - 0.5;
  // |u| < 1/2, so the log argument stays in (0, 1].
  return -sigma * (u < 0.0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::fabs(u));
}

CounterRng CounterRng::substream(std::uint64_t stream_id) const {
  return CounterRng(mix64(seed_ ^ mix64(stream_id + kGamma)));
}

}  // namespace privm
