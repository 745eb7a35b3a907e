#include "holochiral/chiralmodel.hpp"

#include <array>
#include <cmath>

#include "holochiral/errors.hpp"

namespace holochiral {

std::string_view to_string(Chirality c) { return c == Chirality::L ? "L" : "R"; }

void fill_enantiomer_hamiltonian(Chirality c, double theta, double phi, const ControlSample& s, CMatrix& h) {
    using namespace level3;
    h.setZero(kDim, kDim);
    const cd carrier = std::polar(s.omega / 2.0, s.phase);
    const cd g1 = double(sign(c)) * std::sin(theta / 2.0) * carrier;
    const cd g2 = std::cos(theta / 2.0) * carrier * std::polar(1.0, phi);
    h(k1, k0) = g1;
    h(k0, k1) = std::conj(g1);
    h(k2, k0) = g2;
    h(k0, k2) = std::conj(g2);
    h(k0, k0) = s.detuning;
}

Operator enantiomer_hamiltonian(Chirality c, const DriveParams& p, double t) {
    const ControlSample s = p.control ? p.control(t) : ControlSample{};
    if (s.omega < 0.0) throw ContractViolation("drive envelope must be non-negative");
    CMatrix h(level3::kDim, level3::kDim);
    fill_enantiomer_hamiltonian(c, p.theta, p.phi, s, h);
    return Operator::hermitian(std::move(h));
}

DarkBright dark_bright_basis(Chirality c, double theta, double phi) {
    using namespace level3;
    const double sn = std::sin(theta / 2.0);
    const double cs = std::cos(theta / 2.0);
    const cd e = std::polar(1.0, phi);
    const double sg = sign(c);
    CVector d = CVector::Zero(kDim);
    CVector b = CVector::Zero(kDim);
    // D_L = -cos|1> + sin e^{i phi}|2>,  D_R = +cos|1> + sin e^{i phi}|2>
    d(k1) = -sg * cs;
    d(k2) = sn * e;
    // B_L = +sin|1> + cos e^{i phi}|2>,  B_R = -sin|1> + cos e^{i phi}|2>
    b(k1) = sg * sn;
    b(k2) = cs * e;
    return {StateVector::normalized(std::move(d)), StateVector::normalized(std::move(b))};
}

Operator to_dark_bright_frame(const Operator& h, Chirality c, double theta, double phi) {
    if (h.dim() != level3::kDim) throw ContractViolation("dark/bright frame needs a 3-level operator");
    const DarkBright db = dark_bright_basis(c, theta, phi);
    CMatrix w(3, 3);
    w.col(0) = db.dark.amplitudes();
    w.col(1) = db.bright.amplitudes();
    w.col(2) = StateVector::basis(3, level3::k0).amplitudes();
    CMatrix out = w.adjoint() * h.matrix() * w;
    double residual = 0.0;
    for (int k = 1; k < 3; ++k) residual = std::max({residual, std::abs(out(0, k)), std::abs(out(k, 0))});
    residual = std::max(residual, std::abs(out(0, 0)));
    if (residual > 1e-10)
        throw ContractViolation("dark state couples to the drive (residual " + std::to_string(residual) +
                                "): parameters do not match the Hamiltonian");
    if (h.is_hermitian()) return Operator::hermitian(std::move(out));
    return Operator::general(std::move(out));
}

namespace {

// Index of each three-level basis state inside the qudit.
std::array<int, 3> qudit_slots(Chirality c) {
    return {level4::chiral_level(c), level4::k2, level4::k0};
}

}  // namespace

Operator qudit_embed(Chirality c, const Operator& h3) {
    if (h3.dim() != level3::kDim) throw ContractViolation("qudit_embed needs a 3-level operator");
    const auto slot = qudit_slots(c);
    CMatrix h4 = CMatrix::Zero(level4::kDim, level4::kDim);
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) h4(slot[r], slot[col]) = h3(r, col);
    if (h3.is_unitary()) {
        h4(level4::spectator_level(c), level4::spectator_level(c)) = 1.0;
        return Operator::unitary(std::move(h4));
    }
    if (h3.is_hermitian()) return Operator::hermitian(std::move(h4));
    return Operator::general(std::move(h4));
}

StateVector qudit_embed(Chirality c, const StateVector& psi3) {
    if (psi3.dim() != level3::kDim) throw ContractViolation("qudit_embed needs a 3-level state");
    const auto slot = qudit_slots(c);
    CVector v = CVector::Zero(level4::kDim);
    for (int r = 0; r < 3; ++r) v(slot[r]) = psi3[r];
    return StateVector(std::move(v));
}

StateVector qudit_restrict(Chirality c, const StateVector& psi4) {
    if (psi4.dim() != level4::kDim) throw ContractViolation("qudit_restrict needs a 4-level state");
    if (psi4.population(level4::spectator_level(c)) > 1e-10)
        throw ContractViolation("spectator level is populated; state does not belong to this enantiomer");
    const auto slot = qudit_slots(c);
    CVector v(3);
    for (int r = 0; r < 3; ++r) v(r) = psi4[slot[r]];
    return StateVector::normalized(std::move(v));
}

}  // namespace holochiral
