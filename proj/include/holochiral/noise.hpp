#pragma once

// Seeded amplitude-noise channels.
//
// Random numbers come from Philox4x32-10 (Salmon et al., Random123) used as a
// pure function of (key = master seed, counter = stream, sample index, lane),
// so a realization never depends on which thread draws it or in what order.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "holochiral/pulsegen.hpp"

namespace holochiral {

inline constexpr std::string_view kPrngName = "philox4x32-10";
inline constexpr double kNoiseScale = 0.2;  // std-dev of awag(), half-width of rand()

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Stateless stream: every draw is addressed by (index, lane).
class CounterStream {
  public:
    CounterStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    // Uniform on (0, 1), 53-bit resolution.
    double uniform(std::uint64_t index, std::uint32_t lane) const;
    // Standard normal, Box-Muller on the two 64-bit halves of one block.
    double normal(std::uint64_t index, std::uint32_t lane) const;

  private:
    std::array<std::uint32_t, 4> block(std::uint64_t index, std::uint32_t lane) const;

    std::uint64_t seed_;
    std::uint64_t stream_;
};

// Substream id for one (grid point, trial) pair of a sweep.
std::uint64_t trial_stream(std::uint32_t point_index, std::uint32_t trial_index);

struct NoiseSpec {
    double delta = 0.0;  // signed offset, Omega_r = (1 + delta) Omega_i
    double alpha = 0.0;  // weight of Gaussian noise, std-dev kNoiseScale
    double beta = 0.0;   // weight of uniform noise on [-kNoiseScale, kNoiseScale]
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    bool per_sample = true;  // one draw per grid point; false draws one value per trial

    bool stochastic() const { return alpha != 0.0 || beta != 0.0; }
};

PulseSchedule apply_offset(const PulseSchedule& s, double delta);

struct StochasticOutcome {
    PulseSchedule schedule;
    std::vector<double> factors;  // 1 + alpha g_j + beta u_j before clipping
    int clipped = 0;              // samples whose factor was negative and set to 0
};

// Omega'(t_j) = Omega(t_j)(1 + alpha g_j + beta u_j), g_j ~ N(0, 0.2^2), u_j ~ U(-0.2, 0.2).
StochasticOutcome apply_stochastic(const PulseSchedule& s, const NoiseSpec& spec);

// Both channels, offset first. This is the field shared by the two enantiomers of a trial.
StochasticOutcome apply_noise(const PulseSchedule& s, const NoiseSpec& spec);

}  // namespace holochiral
