#include "kostlan/rng.hpp"

#include <cmath>

namespace kostlan {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
    : key_(splitmix64(master_seed ^ splitmix64(stream_index ^ 0x6a09e667f3bcc908ULL))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  const std::uint64_t c = counter_++;
  return splitmix64(key_ ^ splitmix64(c));
}

ComplexGaussianStream::ComplexGaussianStream(std::uint64_t master_seed,
                                             std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index), engine_(master_seed, stream_index) {}

std::complex<double> ComplexGaussianStream::next_complex() {
  // Real and imaginary parts are N(0, 1/2) so that E|a|^2 = 1.
  constexpr double kScale = 0.70710678118654752440;
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {kScale * re, kScale * im};
}

double ComplexGaussianStream::next_normal() { return normal_(engine_); }

double ComplexGaussianStream::next_uniform() {
  // 53 random mantissa bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace kostlan
