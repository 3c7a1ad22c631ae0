#pragma once

#include <complex>
#include <cstdint>

namespace macpsk {

/// Mixes (seed, a, b) into one stream key, so every (snr index, trial index)
/// pair owns an independent substream and results never depend on scheduling.
std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Small counter-style generator (splitmix64 steps over a mixed key).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    std::uint64_t next();

    /// Uniform in (0, 1], 53-bit resolution (safe under log()).
    double uniform01();

    /// Uniform integer in [0, n), fixed single draw.
    std::uint32_t uniform_below(std::uint32_t n);

    /// Independent standard normal real and imaginary parts (Box-Muller).
    std::complex<double> gaussian_pair();

    /// Circularly symmetric complex Gaussian with the given total variance.
    std::complex<double> cn(double variance);

  private:
    std::uint64_t state_;
};

}  // namespace macpsk
