#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "holochiral/errors.hpp"
#include "holochiral/experiments.hpp"
#include "holochiral/holonomy.hpp"
#include "oracles.hpp"

using namespace holochiral;
using std::numbers::pi;

namespace {

constexpr Chirality kBoth[] = {Chirality::L, Chirality::R};

double circular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2 * pi);
    return std::min(d, 2 * pi - d);
}

// Oriented solid angle of a closed curve on the unit sphere, summed over the
// triangles it forms with a reference point (Van Oosterom-Strackee).
double solid_angle(const std::vector<Eigen::Vector3d>& curve, const Eigen::Vector3d& ref) {
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < curve.size(); ++j) {
        const Eigen::Vector3d& a = curve[j];
        const Eigen::Vector3d& b = curve[j + 1];
        const double num = ref.dot(a.cross(b));
        const double den = 1.0 + ref.dot(a) + ref.dot(b) + a.dot(b);
        total += 2.0 * std::atan2(num, den);
    }
    return total;
}

}  // namespace

TEST(Target, TrivialPhaseIsIdentityOnTheQubit) {
    for (Chirality c : kBoth) {
        const Operator u = target_unitary(1.1, 0.4, 0.0, c);
        EXPECT_LT(max_abs(qubit_block(u) - CMatrix::Identity(2, 2)), 1e-15);
    }
}

TEST(Target, ClosedFormGateAtThreeQuartersPi) {
    const double r = 1 / std::sqrt(2.0);
    for (double phi : {0.0, 0.9}) {
        const CMatrix l = qubit_block(target_unitary(3 * pi / 4, phi, pi, Chirality::L));
        const CMatrix rr = qubit_block(target_unitary(3 * pi / 4, phi, pi, Chirality::R));
        // Diagonal +-1/sqrt(2) with opposite signs; off-diagonals of magnitude 1/sqrt(2) flip with chirality.
        EXPECT_NEAR(std::abs(l(0, 0)), r, 1e-15);
        EXPECT_NEAR(std::abs(l(1, 1)), r, 1e-15);
        EXPECT_NEAR(std::abs(l(0, 0) + l(1, 1)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(l(0, 1)), r, 1e-15);
        EXPECT_NEAR(std::abs(l(0, 1) + rr(0, 1)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(l(1, 0) + rr(1, 0)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(l(0, 0) - rr(0, 0)), 0.0, 1e-15);
        // Up to a global phase the reference matrix has e^{-i phi} above the diagonal.
        const cd ratio = l(0, 1) / l(0, 0);
        EXPECT_NEAR(std::abs(ratio - std::polar(1.0, -phi)), 0.0, 1e-14);
    }
}

TEST(Target, SendsThePreparedStateToOppositeLevels) {
    for (double phi0 : {0.0, 0.7, pi / 2, 2.9}) {
        const StateVector psi = prepare_initial(phi0);
        const StateVector l = target_unitary(3 * pi / 4, phi0, pi, Chirality::L).apply(psi);
        const StateVector r = target_unitary(3 * pi / 4, phi0, pi, Chirality::R).apply(psi);
        EXPECT_GE(l.population(level3::k1), 1 - 1e-12);
        EXPECT_GE(r.population(level3::k2), 1 - 1e-12);
    }
}

TEST(Target, UnitaryBlockDiagonalAndChiralPartners) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    CMatrix z = CMatrix::Identity(3, 3);
    z(0, 0) = -1;
    for (int i = 0; i < 50; ++i) {
        const double theta = u(rng), phi = u(rng), gamma = u(rng);
        const Operator l = target_unitary(theta, phi, gamma, Chirality::L);
        const Operator r = target_unitary(theta, phi, gamma, Chirality::R);
        EXPECT_LT(unitarity_defect(l.matrix()), 1e-12);
        EXPECT_EQ(l(0, 2), cd(0));
        EXPECT_EQ(l(2, 0), cd(0));
        EXPECT_EQ(l(1, 2), cd(0));
        EXPECT_NEAR(unitary_fidelity(Operator::unitary(z * l.matrix() * z), r), 1.0, 1e-12);
    }
}

TEST(Target, BlockFidelityIgnoresGlobalPhase) {
    const Operator t = target_unitary(1.0, 2.0, 0.5, Chirality::L);
    const Operator v = Operator::unitary(std::polar(1.0, 0.77) * t.matrix());
    EXPECT_NEAR(block_fidelity(v, t), 1.0, 1e-14);
    EXPECT_THROW(qubit_block(Operator::identity(4)), ContractViolation);
}

TEST(GeometricPhase, ConstantFrameHasNoPhase) {
    const DarkBright db = dark_bright_basis(Chirality::L, 1.0, 0.0);
    const CyclicBasisFrame f{db.dark, [&](double) { return db.bright; }, Chirality::L, 1.0};
    EXPECT_NEAR(geometric_phase(f, TimeGrid(1.0, 100)), 0.0, 1e-15);
}

TEST(GeometricPhase, OrangeSliceMatchesPropagatedHolonomy) {
    for (double gamma : {pi / 2, pi, 3 * pi / 2}) {
        const GateAngles g{3 * pi / 4, 0.6, gamma};
        const PulseSchedule s = nhqc_schedule(g, 4 * pi);
        for (Chirality c : kBoth) {
            const Operator u = propagator(s.kernel(c), s.grid(), 3);
            const CVector b = dark_bright_basis(c, g.theta, g.phi).bright.amplitudes();
            const double extracted = std::arg(b.dot(u.matrix() * b));
            const double geo = geometric_phase(orange_slice_frame(s, c), s.grid());
            EXPECT_LT(circular_distance(geo, extracted), 1e-4) << "gamma=" << gamma;
            EXPECT_LT(circular_distance(geo, gamma), 1e-4);
        }
    }
}

TEST(GeometricPhase, LoopPhaseEqualsMinusHalfTheSolidAngle) {
    for (double gamma : {0.8, pi, 4.0}) {
        const LoopPath path = default_loop(gamma, 4 * pi);
        const GateAngles g{3 * pi / 4, 0.2, gamma};
        const TimeGrid grid(4 * pi, 4000);
        std::vector<Eigen::Vector3d> curve;
        for (int j = 0; j <= grid.steps(); ++j) {
            const double t = grid.time(j), k = path.k(t), beta = path.beta(t);
            // Bloch vector in the (B, |0>) plane with B at the north pole.
            curve.emplace_back(std::sin(k) * std::cos(beta), -std::sin(k) * std::sin(beta), -std::cos(k));
        }
        // The loop starts and ends on the B pole, so the reference must not be its antipode.
        const double omega = solid_angle(curve, Eigen::Vector3d(0.37, -0.81, 0.45).normalized());
        const double omega2 = solid_angle(curve, Eigen::Vector3d(-0.6, 0.1, 0.79).normalized());
        for (Chirality c : kBoth) {
            const double geo = geometric_phase(frame_from_path(c, g.theta, g.phi, path), grid);
            EXPECT_LT(circular_distance(geo, -omega / 2), 1e-4) << "gamma=" << gamma;
            EXPECT_LT(circular_distance(geo, -omega2 / 2), 1e-4) << "gamma=" << gamma;
        }
    }
}

TEST(GeometricPhase, InvariantUnderTimeWarp) {
    const double T = 4 * pi;
    const LoopPath path = default_loop(2.2, T);
    const GateAngles g{3 * pi / 4, 0.0, 2.2};
    const CyclicBasisFrame plain = frame_from_path(Chirality::R, g.theta, g.phi, path);
    CyclicBasisFrame warped = plain;
    warped.zeta1 = [&](double t) { return plain.zeta1(t + 0.4 * T / (2 * pi) * std::sin(2 * pi * t / T)); };
    const TimeGrid grid(T, 2000);
    EXPECT_LT(circular_distance(geometric_phase(plain, grid), geometric_phase(warped, grid)), 1e-4);
}

TEST(GeometricPhase, RejectsOpenOrNonOrthogonalFrames) {
    const DarkBright db = dark_bright_basis(Chirality::L, 1.0, 0.0);
    const CyclicBasisFrame open{db.dark,
                                [&](double t) { return loop_basis_state(Chirality::L, 1.0, 0.0, pi - t, 0.0); },
                                Chirality::L, 1.0};
    EXPECT_THROW(geometric_phase(open, TimeGrid(1.0, 10)), ContractViolation);
    const CyclicBasisFrame skew{db.dark, [&](double) { return db.dark; }, Chirality::L, 1.0};
    EXPECT_THROW(geometric_phase(skew, TimeGrid(1.0, 10)), ContractViolation);
    CyclicBasisFrame empty{db.dark, nullptr, Chirality::L, 1.0};
    EXPECT_THROW(validate_frame(empty, TimeGrid(1.0, 10)), ContractViolation);
}

TEST(DynamicalPhase, ZeroHamiltonian) {
    const TimeGrid grid(2.0, 100);
    const std::vector<double> z(101, 0.0);
    const PulseSchedule s = PulseSchedule::from_samples(Scheme::NHQC, {1.0, 0.0, pi}, grid, z, z, z, {0, 1, 2});
    const DarkBright db = dark_bright_basis(Chirality::L, 1.0, 0.0);
    const CyclicBasisFrame f{db.dark, [&](double) { return db.bright; }, Chirality::L, 2.0};
    EXPECT_EQ(dynamical_phase(s, f, Chirality::L), 0.0);
}

TEST(DynamicalPhase, StaticFrameUnderConstantResonantDrive) {
    const double omega = 0.8, Phi = 0.6, T = 3.0, theta = 1.2, phi = 0.3;
    const TimeGrid grid(T, 300);
    const PulseSchedule s =
        PulseSchedule::from_samples(Scheme::NHQC, {theta, phi, pi}, grid, std::vector<double>(301, omega),
                                    std::vector<double>(301, Phi), std::vector<double>(301, 0.0), {0, T / 2, T});
    for (Chirality c : kBoth) {
        const DarkBright db = dark_bright_basis(c, theta, phi);
        CVector v = db.bright.amplitudes();
        v(level3::k0) += 1.0;
        const StateVector zeta = StateVector::normalized(v);
        const CyclicBasisFrame f{db.dark, [&](double) { return zeta; }, c, T};
        EXPECT_NEAR(dynamical_phase(s, f, c), omega * T / 2 * std::cos(Phi), 1e-12);
    }
}

TEST(DynamicalPhase, AcceptedSchedulesHaveNone) {
    const PulseSchedule nh = nhqc_schedule({3 * pi / 4, pi / 2, pi}, 4 * pi);
    const GateAngles g{3 * pi / 4, pi / 2, pi};
    const LoopPath path = default_loop(pi, 4 * pi);
    const PulseSchedule np = nhqcplus_schedule(g, path, 4 * pi);
    for (Chirality c : kBoth) {
        const HolonomyPhases a = holonomy_phases(nh, orange_slice_frame(nh, c), c);
        EXPECT_LE(std::abs(a.dynamical), 1e-6);
        const HolonomyPhases b = holonomy_phases(np, frame_from_path(c, g.theta, g.phi, path), c);
        EXPECT_LE(std::abs(b.dynamical), 1e-6);
        EXPECT_LT(circular_distance(b.geometric, pi), 1e-4);
    }
}

TEST(Generators, GeometricPartIsHermitianAndOffDiagonalsVanish) {
    const GateAngles g{3 * pi / 4, pi / 2, pi};
    const PulseSchedule nh = nhqc_schedule(g, 4 * pi);
    const LoopPath path = default_loop(pi, 4 * pi);
    const PulseSchedule np = nhqcplus_schedule(g, path, 4 * pi);
    for (Chirality c : kBoth) {
        const CyclicBasisFrame fo = orange_slice_frame(nh, c);
        const CyclicBasisFrame fp = frame_from_path(c, g.theta, g.phi, path);
        for (double t : {0.0, 1.0, 3.3, 7.1, 11.0, 4 * pi}) {
            const EvolutionGenerators a = evolution_generators(fo, nh, c, t);
            EXPECT_LT(hermiticity_defect(a.geometric), 1e-6) << t;
            EXPECT_LE(std::abs((a.geometric - a.dynamical)(0, 1)), 1e-8);
            EXPECT_LE(std::abs((a.geometric - a.dynamical)(1, 0)), 1e-8);
            const EvolutionGenerators b = evolution_generators(fp, np, c, t);
            EXPECT_LT(hermiticity_defect(b.geometric), 1e-6) << t;
        }
        EXPECT_THROW(evolution_generators(fp, np, c, -0.1), ContractViolation);
    }
}

TEST(Generators, CoefficientsReproduceThePropagation) {
    const GateAngles g{3 * pi / 4, pi / 2, pi};
    const LoopPath path = default_loop(pi, 4 * pi);
    // Both sides are second order in dt; a fine grid keeps their difference below the bound.
    const PulseSchedule s = nhqcplus_schedule(g, path, 4 * pi, 16000);
    const StateVector psi0 = prepare_initial(0.4);
    for (Chirality c : kBoth) {
        const CyclicBasisFrame f = frame_from_path(c, g.theta, g.phi, path);
        const CVector alpha = integrate_basis_coefficients(f, s, c, psi0);
        const CVector final = propagator(s.kernel(c), s.grid(), 3).matrix() * psi0.amplitudes();
        EXPECT_NEAR(std::abs(alpha(0) - f.zeta0.amplitudes().dot(final)), 0.0, 1e-6);
        EXPECT_NEAR(std::abs(alpha(1) - f.zeta1(4 * pi).amplitudes().dot(final)), 0.0, 1e-6);
    }
}
