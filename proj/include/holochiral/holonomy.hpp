#pragma once

// Target holonomies, geometric and dynamical phases of cyclic bases, and the
// (A, H) generators that drive the basis coefficients.
//
// target_unitary returns |D><D| + e^{i gamma}|B><B| + e^{-i gamma}|0><0|. For
// theta = 3pi/4, gamma = pi its qubit block is the textbook chirality-dependent
// gate up to an overall sign; all gate comparisons here are global-phase
// insensitive and restricted to span{|1>, |2>}, so the |0> entry never matters.

#include <functional>

#include "holochiral/chiralmodel.hpp"
#include "holochiral/pulsegen.hpp"
#include "holochiral/statecore.hpp"

namespace holochiral {

struct CyclicBasisFrame {
    StateVector zeta0;                          // dark state, time independent
    std::function<StateVector(double)> zeta1;   // cyclic basis vector
    Chirality chirality = Chirality::L;
    double period = 0.0;
};

struct HolonomyPhases {
    double geometric = 0.0;
    double dynamical = 0.0;
};

Operator target_unitary(double theta, double phi, double gamma, Chirality c);

// 2x2 block of a three-level operator on span{|1>, |2>}.
CMatrix qubit_block(const Operator& u);

// |Tr(A^dag B)|^2 / 4 on the qubit blocks.
double block_fidelity(const Operator& simulated, const Operator& target);

// Frame whose bright vector follows a LoopPath.
CyclicBasisFrame frame_from_path(Chirality c, double theta, double phi, const LoopPath& path);

// Orange-slice frame of an NHQC schedule: the bright vector runs B -> |0> along
// one meridian and returns along another, the azimuth jumping at |0> by the
// phase difference of the two segments. Polar angle follows the sampled area.
CyclicBasisFrame orange_slice_frame(const PulseSchedule& s, Chirality c);

// Throws ContractViolation if zeta1(T) != zeta1(0) or zeta0 is not orthogonal
// to zeta1 on the grid.
void validate_frame(const CyclicBasisFrame& frame, const TimeGrid& grid);

// sum_j -arg <zeta1(t_j)|zeta1(t_{j+1})>, folded into [0, 2 pi). For smooth
// frames this is the midpoint quadrature of i<zeta1|d zeta1/dt>; unlike a
// derivative it stays exact across gauge jumps of the frame.
double geometric_phase(const CyclicBasisFrame& frame, const TimeGrid& grid);

// int_0^T <zeta1|H|zeta1> dt, trapezoid rule on the schedule grid.
double dynamical_phase(const PulseSchedule& s, const CyclicBasisFrame& frame, Chirality c);

HolonomyPhases holonomy_phases(const PulseSchedule& s, const CyclicBasisFrame& frame, Chirality c);

struct EvolutionGenerators {
    CMatrix geometric;  // A_mn = i <zeta_m| d/dt |zeta_n>
    CMatrix dynamical;  // H_mn = <zeta_m| H |zeta_n>
};

// Derivatives by central differences with the grid step (one-sided second
// order at the ends).
EvolutionGenerators evolution_generators(const CyclicBasisFrame& frame, const PulseSchedule& s, Chirality c,
                                         double t);

// Integrates d alpha/dt = i (A - H) alpha across the schedule grid, starting
// from alpha(0) = (<zeta0|psi0>, <zeta1(0)|psi0>).
CVector integrate_basis_coefficients(const CyclicBasisFrame& frame, const PulseSchedule& s, Chirality c,
                                     const StateVector& psi0);

}  // namespace holochiral
