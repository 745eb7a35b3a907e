#include "holochiral/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holochiral {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(kM0) * ctr[0];
        const std::uint64_t p1 = std::uint64_t(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

std::array<std::uint32_t, 4> CounterStream::block(std::uint64_t index, std::uint32_t lane) const {
    // Counter words: sample index (low 32), lane, stream (low/high 32).
    const std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(index),
                                           lane ^ (static_cast<std::uint32_t>(index >> 32) << 16),
                                           static_cast<std::uint32_t>(stream_),
                                           static_cast<std::uint32_t>(stream_ >> 32)};
    return philox4x32(ctr, {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
}

namespace {

double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((std::uint64_t(hi) << 32) | lo) >> 11;
    return (double(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

double CounterStream::uniform(std::uint64_t index, std::uint32_t lane) const {
    const auto b = block(index, lane);
    return to_unit(b[0], b[1]);
}

double CounterStream::normal(std::uint64_t index, std::uint32_t lane) const {
    const auto b = block(index, lane);
    const double u1 = to_unit(b[0], b[1]);
    const double u2 = to_unit(b[2], b[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t trial_stream(std::uint32_t point_index, std::uint32_t trial_index) {
    return (std::uint64_t(point_index) << 32) | trial_index;
}

PulseSchedule apply_offset(const PulseSchedule& s, double delta) {
    if (!(1.0 + delta > 0.0)) throw std::invalid_argument("offset needs 1 + delta > 0");
    if (delta == 0.0) return s;
    return s.with_amplitude_gain(std::vector<double>(s.omega().size(), 1.0 + delta));
}

namespace {

constexpr std::uint32_t kGaussLane = 0;
constexpr std::uint32_t kUniformLane = 1;

}  // namespace

StochasticOutcome apply_stochastic(const PulseSchedule& s, const NoiseSpec& spec) {
    const std::size_t n = s.omega().size();
    if (!spec.stochastic()) return {s, std::vector<double>(n, 1.0), 0};
    const CounterStream rng(spec.seed, spec.stream);
    std::vector<double> factors(n);
    std::vector<double> gain(n);
    int clipped = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t idx = spec.per_sample ? j : 0;
        const double g = kNoiseScale * rng.normal(idx, kGaussLane);
        const double u = kNoiseScale * (2.0 * rng.uniform(idx, kUniformLane) - 1.0);
        factors[j] = 1.0 + spec.alpha * g + spec.beta * u;
        gain[j] = factors[j];
        if (gain[j] < 0.0) {
            gain[j] = 0.0;
            ++clipped;
        }
    }
    return {s.with_amplitude_gain(gain), std::move(factors), clipped};
}

StochasticOutcome apply_noise(const PulseSchedule& s, const NoiseSpec& spec) {
    return apply_stochastic(apply_offset(s, spec.delta), spec);
}

}  // namespace holochiral
