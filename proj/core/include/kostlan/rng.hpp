#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace kostlan {

/// Counter-based 64-bit generator: output k of stream (seed, index) is a pure
/// function of (seed, index, k), so streams can be created anywhere without
/// coordinating shared state.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Source of i.i.d. standard complex Gaussians (density e^{-|z|^2}/pi).
class ComplexGaussianStream {
 public:
  ComplexGaussianStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::complex<double> next_complex();
  double next_normal();
  /// Uniform on the open interval (0, 1).
  double next_uniform();

  CounterRng& engine() noexcept { return engine_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  CounterRng engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace kostlan
