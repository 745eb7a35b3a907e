#include "holochiral/holonomy.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "holochiral/errors.hpp"

namespace holochiral {

using std::numbers::pi;

Operator target_unitary(double theta, double phi, double gamma, Chirality c) {
    const DarkBright db = dark_bright_basis(c, theta, phi);
    const CVector& d = db.dark.amplitudes();
    const CVector& b = db.bright.amplitudes();
    CMatrix u = d * d.adjoint() + std::polar(1.0, gamma) * (b * b.adjoint());
    u(level3::k0, level3::k0) = std::polar(1.0, -gamma);
    return Operator::unitary(std::move(u), 1e-12);
}

CMatrix qubit_block(const Operator& u) {
    if (u.dim() != level3::kDim) throw ContractViolation("qubit_block needs a 3-level operator");
    return u.matrix().topLeftCorner(2, 2);
}

double block_fidelity(const Operator& simulated, const Operator& target) {
    const CMatrix a = qubit_block(simulated);
    const CMatrix b = qubit_block(target);
    return std::min(1.0, std::norm((a.adjoint() * b).trace()) / 4.0);
}

CyclicBasisFrame frame_from_path(Chirality c, double theta, double phi, const LoopPath& path) {
    path.validate();
    return {dark_bright_basis(c, theta, phi).dark,
            [=](double t) { return loop_basis_state(c, theta, phi, path.k(t), path.beta(t)); }, c, path.duration};
}

CyclicBasisFrame orange_slice_frame(const PulseSchedule& s, Chirality c) {
    if (s.scheme() != Scheme::NHQC) throw ContractViolation("orange-slice frame needs an NHQC schedule");
    const TimeGrid& grid = s.grid();
    const int n = grid.steps();
    const int half = n / 2;

    auto area = std::make_shared<std::vector<double>>(n + 1, 0.0);
    for (int j = 0; j < n; ++j) (*area)[j + 1] = (*area)[j] + 0.5 * grid.dt() * (s.omega()[j] + s.omega()[j + 1]);
    const double a_half = (*area)[half];
    const double a_total = (*area)[n];
    if (!(a_half > 0.0 && a_total > a_half)) throw ContractViolation("NHQC schedule has an empty segment");

    const double beta_out = s.phase()[0] + pi / 2.0;
    const double beta_back = s.phase()[n] - pi / 2.0;
    const auto& a = s.angles();
    const double tau = grid.time(half);

    auto zeta1 = [=](double t) {
        const double x = std::clamp(t / grid.dt(), 0.0, double(n));
        const int j = std::min(static_cast<int>(x), n - 1);
        const double f = x - j;
        const double cum = (1.0 - f) * (*area)[j] + f * (*area)[j + 1];
        if (t < tau) return loop_basis_state(c, a.theta, a.phi, pi * (1.0 - cum / a_half), beta_out);
        return loop_basis_state(c, a.theta, a.phi, pi * (cum - a_half) / (a_total - a_half), beta_back);
    };
    return {dark_bright_basis(c, a.theta, a.phi).dark, zeta1, c, s.duration()};
}

void validate_frame(const CyclicBasisFrame& frame, const TimeGrid& grid) {
    if (!frame.zeta1) throw ContractViolation("frame has no cyclic vector");
    const StateVector start = frame.zeta1(0.0);
    const StateVector end = frame.zeta1(grid.duration());
    if ((start.amplitudes() - end.amplitudes()).cwiseAbs().maxCoeff() > 1e-10)
        throw ContractViolation("frame is not cyclic: zeta1(T) != zeta1(0)");
    for (int j = 0; j <= grid.steps(); ++j) {
        const cd ov = frame.zeta0.amplitudes().dot(frame.zeta1(grid.time(j)).amplitudes());
        if (std::abs(ov) > 1e-10) throw ContractViolation("zeta0 and zeta1 are not orthogonal");
    }
}

double geometric_phase(const CyclicBasisFrame& frame, const TimeGrid& grid) {
    validate_frame(frame, grid);
    double acc = 0.0;
    CVector prev = frame.zeta1(0.0).amplitudes();
    for (int j = 1; j <= grid.steps(); ++j) {
        CVector next = frame.zeta1(grid.time(j)).amplitudes();
        acc -= std::arg(prev.dot(next));
        prev = std::move(next);
    }
    double g = std::fmod(acc, 2.0 * pi);
    if (g < 0.0) g += 2.0 * pi;
    return g;
}

double dynamical_phase(const PulseSchedule& s, const CyclicBasisFrame& frame, Chirality c) {
    const TimeGrid& grid = s.grid();
    CMatrix h(3, 3);
    double acc = 0.0;
    for (int j = 0; j <= grid.steps(); ++j) {
        const double t = grid.time(j);
        s.fill_hamiltonian(c, t, h);
        const CVector z = frame.zeta1(t).amplitudes();
        const double w = (j == 0 || j == grid.steps()) ? 0.5 : 1.0;
        acc += w * z.dot(h * z).real();
    }
    return acc * grid.dt();
}

HolonomyPhases holonomy_phases(const PulseSchedule& s, const CyclicBasisFrame& frame, Chirality c) {
    return {geometric_phase(frame, s.grid()), dynamical_phase(s, frame, c)};
}

namespace {

CMatrix frame_matrix(const CyclicBasisFrame& frame, double t) {
    CMatrix m(3, 2);
    m.col(0) = frame.zeta0.amplitudes();
    m.col(1) = frame.zeta1(t).amplitudes();
    return m;
}

}  // namespace

EvolutionGenerators evolution_generators(const CyclicBasisFrame& frame, const PulseSchedule& s, Chirality c,
                                         double t) {
    const double T = s.duration();
    if (t < 0.0 || t > T) throw ContractViolation("evolution_generators: t outside [0, T]");
    const double h = s.grid().dt();
    const CMatrix z = frame_matrix(frame, t);
    auto f = [&](int m) { return frame_matrix(frame, t + m * h); };
    // Fourth-order stencils; one-sided within two steps of an end.
    CMatrix dz;
    if (t - 2 * h < 0.0)
        dz = (-25.0 * z + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4)) / (12 * h);
    else if (t + 2 * h > T)
        dz = (25.0 * z - 48.0 * f(-1) + 36.0 * f(-2) - 16.0 * f(-3) + 3.0 * f(-4)) / (12 * h);
    else
        dz = (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12 * h);

    CMatrix ham(3, 3);
    s.fill_hamiltonian(c, t, ham);
    return {cd(0, 1) * (z.adjoint() * dz), z.adjoint() * ham * z};
}

CVector integrate_basis_coefficients(const CyclicBasisFrame& frame, const PulseSchedule& s, Chirality c,
                                     const StateVector& psi0) {
    const TimeGrid& grid = s.grid();
    CVector alpha = frame_matrix(frame, 0.0).adjoint() * psi0.amplitudes();
    for (int j = 0; j < grid.steps(); ++j) {
        const EvolutionGenerators g = evolution_generators(frame, s, c, grid.midpoint(j));
        CMatrix gen = g.geometric - g.dynamical;
        gen = 0.5 * (gen + gen.adjoint());
        // exp(i (A - H) dt) = exp(-i (H - A) dt)
        alpha = step_unitary_matrix(-gen, grid.dt()) * alpha;
    }
    return alpha;
}

}  // namespace holochiral
