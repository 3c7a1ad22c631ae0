#include "macpsk/rng.hpp"

#include <cmath>
#include <numbers>

namespace macpsk {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t substream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(seed + kGolden);
    h = mix64(h ^ (a + kGolden));
    h = mix64(h ^ (b + kGolden));
    return h;
}

std::uint64_t SplitMix64::next() {
    state_ += kGolden;
    return mix64(state_);
}

double SplitMix64::uniform01() {
    // top 53 bits, then shift into (0, 1]
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

std::uint32_t SplitMix64::uniform_below(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

std::complex<double> SplitMix64::gaussian_pair() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

std::complex<double> SplitMix64::cn(double variance) {
    return std::sqrt(variance / 2.0) * gaussian_pair();
}

}  // namespace macpsk
