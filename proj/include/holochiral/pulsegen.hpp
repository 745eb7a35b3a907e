#pragma once

// Pulse synthesis for the three discrimination schemes.
//
// NHQC   two resonant sine-squared pulses of area pi. Segment 2 is shifted in
//        phase by pi + gamma relative to segment 1, so the bright state picks up
//        e^{+i gamma} and |0> picks up e^{-i gamma}.
// NHQC+  detuned drive inverse-engineered from a LoopPath (k, beta). The
//        bright-state trajectory is sin(k/2)|B> + cos(k/2)e^{-i beta}|0> up to
//        phase, and the local dynamical phase is held at zero.
// STA    counterdiabatic shortcut of a chirped adiabatic passage B -> |0> -> B,
//        moved to resonance by folding the sweep into the phase. The pi phase on
//        the bright state is partly dynamical.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holochiral/chiralmodel.hpp"
#include "holochiral/statecore.hpp"

namespace holochiral {

enum class Scheme { NHQC, NHQCPlus, STA };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

inline constexpr int kDefaultSteps = 2000;

struct GateAngles {
    double theta = 0.0;
    double phi = 0.0;
    double gamma = 0.0;
};

// Cyclic path of the bright-state basis vector. k is the polar angle measured
// from |0> (k = pi is the bright state itself), beta the azimuth.
struct LoopPath {
    double duration = 0.0;
    std::function<double(double)> k;
    std::function<double(double)> k_dot;
    std::function<double(double)> beta;
    std::function<double(double)> beta_dot;

    // Throws ContractViolation unless k(0) = k(T) = pi within 1e-12.
    void validate() const;
};

inline constexpr double kDefaultLoopAmplitude = 0.9 * 3.14159265358979323846;

// k(t) = pi - A sin^2(pi t/T); beta grows as sin^2(pi t/T), scaled so the loop
// encloses geometric phase gamma (taken in (0, 2 pi]).
LoopPath default_loop(double gamma, double duration, double amplitude = kDefaultLoopAmplitude);

// sin(k/2)|B_c> + cos(k/2) e^{-i beta}|0>.
StateVector loop_basis_state(Chirality c, double theta, double phi, double k, double beta);

using ControlLaw = std::function<ControlSample(double)>;

class PulseSchedule {
  public:
    // Samples the law on the grid.
    static PulseSchedule from_law(Scheme scheme, GateAngles angles, TimeGrid grid, ControlLaw law,
                                  std::vector<double> segment_boundaries);
    // Sample-only schedule; evaluation between samples interpolates linearly.
    static PulseSchedule from_samples(Scheme scheme, GateAngles angles, TimeGrid grid, std::vector<double> omega,
                                      std::vector<double> phase, std::vector<double> detuning,
                                      std::vector<double> segment_boundaries);

    Scheme scheme() const { return scheme_; }
    const GateAngles& angles() const { return angles_; }
    const TimeGrid& grid() const { return grid_; }
    double duration() const { return grid_.duration(); }
    const std::vector<double>& omega() const { return omega_; }
    const std::vector<double>& phase() const { return phase_; }
    const std::vector<double>& detuning() const { return detuning_; }
    const std::vector<double>& segment_boundaries() const { return boundaries_; }
    // Per-sample amplitude multiplier applied by noise channels; empty means 1.
    const std::vector<double>& amplitude_gain() const { return gain_; }
    bool has_law() const { return static_cast<bool>(law_); }

    // Control value at time t. Within step j the amplitude carries gain[j].
    ControlSample at(double t) const;
    DriveParams drive() const;
    void fill_hamiltonian(Chirality c, double t, CMatrix& h) const;
    HamiltonianKernel kernel(Chirality c) const;

    // New schedule with Omega samples (and the in-step amplitude) multiplied by
    // gain, which has one entry per grid point.
    PulseSchedule with_amplitude_gain(const std::vector<double>& gain) const;

  private:
    PulseSchedule(Scheme scheme, GateAngles angles, TimeGrid grid) : scheme_(scheme), angles_(angles), grid_(grid) {}

    int step_of(double t) const;

    Scheme scheme_;
    GateAngles angles_;
    TimeGrid grid_;
    std::vector<double> omega_;
    std::vector<double> phase_;
    std::vector<double> detuning_;
    std::vector<double> boundaries_;
    std::vector<double> gain_;
    ControlLaw law_;
};

PulseSchedule nhqc_schedule(GateAngles angles, double duration, int steps = kDefaultSteps);
PulseSchedule nhqcplus_schedule(GateAngles angles, const LoopPath& path, double duration,
                                int steps = kDefaultSteps);
// The STA map is fixed to a pi phase on the bright state; gamma is recorded as pi.
PulseSchedule sta_schedule(double duration, double theta, double phi, int steps = kDefaultSteps);

// Parameters of the STA reference sweep, in units of Omega_max.
inline constexpr double kStaPeakRabi = 1.0;
inline constexpr double kStaSweepWidth = 1.0;

// max_{t_j, m, n} |<zeta_m(t_j)| H(t_j) |zeta_n(t_j)>| with zeta_m(t) = U(t,0) zeta_m(0)
// over the dark and bright states.
double check_parallel_transport(const PulseSchedule& s, Chirality c);

// max_{m,n} |int_0^T <mu_m(t)| H(t) |mu_n(t)> dt| over the dark state and the
// loop basis state of `path`.
double check_zero_dynamical_phase(const PulseSchedule& s, const LoopPath& path, Chirality c);

// Trapezoidal pulse area of the Omega samples on [t0, t1]; both must be grid points.
double sampled_area(const PulseSchedule& s, double t0, double t1);

// Geometric phase int beta_dot cos^2(k/2) dt of a loop, by the trapezoid rule.
double loop_phase(const LoopPath& path, int samples = 4096);

// CSV header `t,omega,phi,delta`, 17 significant digits.
std::string schedule_csv(const PulseSchedule& s);
// JSON sidecar: scheme, angles, duration, steps, segment boundaries.
std::string schedule_sidecar(const PulseSchedule& s);
PulseSchedule parse_schedule(std::string_view csv, std::string_view sidecar);

}  // namespace holochiral
