#pragma once

// Discrimination protocol, contrast, robustness sweeps, population traces,
// gate fidelity, process tomography and readout emulation.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "holochiral/chiralmodel.hpp"
#include "holochiral/noise.hpp"
#include "holochiral/pulsegen.hpp"
#include "holochiral/statecore.hpp"

namespace holochiral {

struct SchemeConfig {
    Scheme scheme = Scheme::NHQC;
    GateAngles angles{};
    double phi0 = 0.0;
    double duration = 0.0;
    int steps = kDefaultSteps;
};

// Defaults: theta = 3pi/4, gamma = pi, phi = phi0 = pi/2, T = 4pi, 2000 steps.
SchemeConfig default_scheme_config(Scheme scheme);

PulseSchedule build_schedule(const SchemeConfig& cfg);

// (|1> + e^{i phi0}|2>)/sqrt(2) in the three-level ordering.
StateVector prepare_initial(double phi0);

struct NoiseDescriptor {
    NoiseSpec spec;
    std::uint64_t realization = 0;  // fingerprint of the applied amplitude gains
    int clipped = 0;

    bool operator==(const NoiseDescriptor& o) const;
};

// Schedule after noise, with the descriptor shared by both enantiomer runs.
struct NoisyField {
    PulseSchedule schedule;
    NoiseDescriptor noise;
};

NoisyField make_field(const PulseSchedule& ideal, const NoiseSpec& spec);

struct DiscriminationResult {
    Chirality chirality = Chirality::L;
    double p1 = 0.0;
    double p2 = 0.0;
    double p0 = 0.0;
    StateVector final_state;
    std::string schedule;
    NoiseDescriptor noise;

    double population(int level) const;
};

DiscriminationResult run_discrimination(const NoisyField& field, Chirality c, double phi0);
DiscriminationResult run_discrimination(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise = {});

// Same protocol in the four-level qudit; populations reported in three-level terms.
DiscriminationResult run_discrimination_qudit(const NoisyField& field, Chirality c, double phi0);

// |P_detect(L) - P_detect(R)|; detect is a three-level index (level3::k1 or level3::k2).
double contrast(const DiscriminationResult& left, const DiscriminationResult& right, int detect = level3::k2);

struct TraceRow {
    double t, p1, p2, p0, ptotal;
};

struct Trace {
    Chirality chirality;
    std::vector<TraceRow> rows;
    std::vector<StateVector> states;
};

Trace population_trace(const PulseSchedule& s, Chirality c, double phi0);

// Resonant sine-squared pi pulse on (|1_c>, |0>) of the qudit over `grid`.
StateVector detection_pulse(const StateVector& psi4, Chirality c, const TimeGrid& grid);

struct SweepPoint {
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct SweepRow {
    Scheme scheme;
    SweepPoint point;
    int trial = 0;
    double xi = 0.0;
    std::array<double, 3> left{};   // P_1, P_2, P_0 of the L run
    std::array<double, 3> right{};  // same for R
    std::uint64_t seed = 0;
};

struct SweepResult {
    Scheme scheme;
    std::vector<SweepPoint> points;
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<SweepRow> rows;  // point-major, trial-minor
};

struct SweepOptions {
    int trials = 20;
    std::uint64_t master_seed = 42;
    int threads = 0;  // 0: hardware concurrency
    int detect = level3::k2;
    bool per_sample = true;
};

// -20% .. +20% in steps of 4% (11 points).
std::vector<double> default_offset_grid();
std::vector<double> default_alpha_grid();

SweepResult offset_sweep(const SchemeConfig& cfg, std::span<const double> deltas, double alpha, double beta,
                         const SweepOptions& opt);
SweepResult random_noise_sweep(const SchemeConfig& cfg, std::span<const SweepPoint> weights, const SweepOptions& opt);
// Generic form: one row per (point, trial).
SweepResult run_sweep(const SchemeConfig& cfg, std::span<const SweepPoint> points, const SweepOptions& opt);

struct PointSummary {
    SweepPoint point;
    double mean = 0.0;
    double stderr_mean = 0.0;
};

std::vector<PointSummary> summarize(const SweepResult& r);

std::string sweep_csv(const SweepResult& r);
std::string trace_csv(const Trace& tr);
// t followed by real/imaginary parts of the |1>, |2>, |0> amplitudes.
std::string amplitude_csv(const Trace& tr);

// Block fidelity of the simulated propagator against target_unitary.
double gate_fidelity(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise = {});

struct QPTResult {
    CMatrix chi;  // Pauli basis {I, X, Y, Z}, trace-normalized
    double process_fidelity = 0.0;
};

// chi of the map on the qubit subspace, from its outputs on |1>, |2>, |+>, |+i>.
CMatrix reconstruct_chi(const std::array<CMatrix, 4>& outputs);
CMatrix chi_of_unitary(const CMatrix& v);
QPTResult qpt(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise = {});

// Finite-shot readout of a population vector; deterministic in seed.
std::vector<std::int64_t> shot_sampling(std::span<const double> populations, std::int64_t shots, std::uint64_t seed);

struct PhaseScanPoint {
    double phi = 0.0;
    double xi = 0.0;
};

// xi over `samples` equally spaced drive phases phi in [0, 2pi), phi0 fixed.
std::vector<PhaseScanPoint> phase_scan(const SchemeConfig& cfg, int samples = 64);

}  // namespace holochiral
