#pragma once

// Chirality-dependent three-level Hamiltonians, their dark/bright frame, and
// the four-level qudit embedding.
//
// Level conventions used throughout the library:
//   three-level spaces are ordered (|1>, |2>, |0>)
//   four-level qudit spaces are ordered (|1_L>, |1_R>, |2>, |0>)
// |1> carries the chirality-odd coupling, |2> the chirality-even one, and |0>
// is the common excited level.

#include <functional>
#include <string_view>

#include "holochiral/statecore.hpp"

namespace holochiral {

enum class Chirality { L, R };

inline int sign(Chirality c) { return c == Chirality::L ? +1 : -1; }
std::string_view to_string(Chirality c);

namespace level3 {
inline constexpr int k1 = 0;
inline constexpr int k2 = 1;
inline constexpr int k0 = 2;
inline constexpr int kDim = 3;
}  // namespace level3

namespace level4 {
inline constexpr int k1L = 0;
inline constexpr int k1R = 1;
inline constexpr int k2 = 2;
inline constexpr int k0 = 3;
inline constexpr int kDim = 4;

inline int chiral_level(Chirality c) { return c == Chirality::L ? k1L : k1R; }
inline int spectator_level(Chirality c) { return c == Chirality::L ? k1R : k1L; }
}  // namespace level4

// Trapped-ion metadata. Stored for manifests; the dynamics run in each
// transition's rotating frame.
struct QuditMetadata {
    static constexpr double kBiasFieldGauss = 5.6;
    static constexpr double kZeemanSplittingMHz = 7.84;
};

// One instant of the two-tone drive.
struct ControlSample {
    double omega = 0.0;     // envelope, units of Omega_max, >= 0
    double phase = 0.0;     // common phase Phi(t)
    double detuning = 0.0;  // Delta(t) on the |0> diagonal
};

struct DriveParams {
    double theta = 0.0;  // mixing angle
    double phi = 0.0;    // relative phase of the |2>-|0> tone
    std::function<ControlSample(double)> control;
};

// Omega_1 = Omega sin(theta/2) e^{i Phi}, Omega_2 = Omega cos(theta/2) e^{i(Phi+phi)};
// the |1>-|0> coupling carries sign(c).
Operator enantiomer_hamiltonian(Chirality c, const DriveParams& p, double t);

// Allocation-free kernel behind enantiomer_hamiltonian.
void fill_enantiomer_hamiltonian(Chirality c, double theta, double phi, const ControlSample& s, CMatrix& h);

struct DarkBright {
    StateVector dark;
    StateVector bright;
};

DarkBright dark_bright_basis(Chirality c, double theta, double phi);

// Change of basis to (D, B, |0>). Throws ContractViolation if the dark row
// couples to anything above 1e-10, which means (c, theta, phi) do not match H.
Operator to_dark_bright_frame(const Operator& h, Chirality c, double theta, double phi);

// Embeds a three-level operator of chirality c into the qudit; the other
// Zeeman level is left undriven.
Operator qudit_embed(Chirality c, const Operator& h3);

// Maps a three-level state into the qudit and back.
StateVector qudit_embed(Chirality c, const StateVector& psi3);
StateVector qudit_restrict(Chirality c, const StateVector& psi4);

}  // namespace holochiral
