#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "holochiral/chiralmodel.hpp"
#include "holochiral/errors.hpp"
#include "oracles.hpp"

using namespace holochiral;
using std::numbers::pi;

namespace {

DriveParams constant_drive(double theta, double phi, double omega, double Phi, double delta) {
    return {theta, phi, [=](double) { return ControlSample{omega, Phi, delta}; }};
}

struct Draw {
    double theta, phi, omega, Phi, delta;
};

std::vector<Draw> random_draws(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi);
    std::uniform_real_distribution<double> amp(0.0, 2.0);
    std::vector<Draw> out;
    for (int i = 0; i < n; ++i) out.push_back({ang(rng), ang(rng), amp(rng), ang(rng), amp(rng) - 1.0});
    return out;
}

}  // namespace

TEST(Chirality, SignConvention) {
    EXPECT_EQ(sign(Chirality::L), 1);
    EXPECT_EQ(sign(Chirality::R), -1);
    EXPECT_EQ(to_string(Chirality::L), "L");
    EXPECT_EQ(to_string(Chirality::R), "R");
}

TEST(Hamiltonian, MatchesEntryByEntryOracle) {
    for (const auto& d : random_draws(100, 1))
        for (Chirality c : {Chirality::L, Chirality::R}) {
            const Operator h = enantiomer_hamiltonian(c, constant_drive(d.theta, d.phi, d.omega, d.Phi, d.delta), 0.0);
            EXPECT_TRUE(h.is_hermitian());
            const oracle::Mat ref = oracle::hamiltonian(sign(c), d.theta, d.phi, d.omega, d.Phi, d.delta);
            EXPECT_LT((h.matrix() - ref).cwiseAbs().maxCoeff(), 1e-15);
        }
}

TEST(Hamiltonian, DecoupledLimit) {
    const Operator h = enantiomer_hamiltonian(Chirality::L, constant_drive(1.0, 2.0, 0.0, 0.5, 0.7), 0.0);
    CMatrix expect = CMatrix::Zero(3, 3);
    expect(level3::k0, level3::k0) = 0.7;
    EXPECT_LT(max_abs(h.matrix() - expect), 1e-15);
}

TEST(Hamiltonian, ClosedFormEntriesAtThreeQuartersPi) {
    const Operator h = enantiomer_hamiltonian(Chirality::L, constant_drive(3 * pi / 4, 0.0, 1.0, 0.0, 0.0), 0.0);
    EXPECT_NEAR(h(level3::k1, level3::k0).real(), 0.4619397662556434, 1e-15);
    EXPECT_NEAR(h(level3::k2, level3::k0).real(), 0.1913417161825449, 1e-15);
    EXPECT_NEAR(h(level3::k1, level3::k0).imag(), 0.0, 1e-15);
}

TEST(Hamiltonian, EnantiomersDifferOnlyInTheFirstCoupling) {
    for (const auto& d : random_draws(50, 2)) {
        const DriveParams p = constant_drive(d.theta, d.phi, d.omega, d.Phi, d.delta);
        const CMatrix diff = enantiomer_hamiltonian(Chirality::L, p, 0.0).matrix() -
                             enantiomer_hamiltonian(Chirality::R, p, 0.0).matrix();
        const cd omega1 = d.omega * std::sin(d.theta / 2) * std::polar(1.0, d.Phi);
        CMatrix expect = CMatrix::Zero(3, 3);
        expect(level3::k1, level3::k0) = omega1;
        expect(level3::k0, level3::k1) = std::conj(omega1);
        EXPECT_LT(max_abs(diff - expect), 1e-15);
    }
}

TEST(Hamiltonian, RejectsNegativeEnvelope) {
    EXPECT_THROW(enantiomer_hamiltonian(Chirality::L, constant_drive(1.0, 0.0, -0.1, 0.0, 0.0), 0.0),
                 ContractViolation);
}

TEST(DarkBright, ClosedFormDefinitions) {
    const double theta = 1.234, phi = 0.77;
    const double s = std::sin(theta / 2), c = std::cos(theta / 2);
    const cd e = std::polar(1.0, phi);
    const DarkBright l = dark_bright_basis(Chirality::L, theta, phi);
    const DarkBright r = dark_bright_basis(Chirality::R, theta, phi);
    EXPECT_LT(std::abs(l.dark[0] + c) + std::abs(l.dark[1] - s * e) + std::abs(l.dark[2]), 1e-15);
    EXPECT_LT(std::abs(l.bright[0] - s) + std::abs(l.bright[1] - c * e) + std::abs(l.bright[2]), 1e-15);
    EXPECT_LT(std::abs(r.dark[0] - c) + std::abs(r.dark[1] - s * e), 1e-15);
    EXPECT_LT(std::abs(r.bright[0] + s) + std::abs(r.bright[1] - c * e), 1e-15);
}

TEST(DarkBright, LimitingAngle) {
    const DarkBright l = dark_bright_basis(Chirality::L, pi, 0.4);
    EXPECT_NEAR(std::abs(l.bright[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(l.dark[1]), 1.0, 1e-15);
}

TEST(DarkBright, OrthogonalForRandomParameters) {
    for (const auto& d : random_draws(100, 3))
        for (Chirality c : {Chirality::L, Chirality::R}) {
            const DarkBright db = dark_bright_basis(c, d.theta, d.phi);
            EXPECT_LT(std::abs(db.dark.amplitudes().dot(db.bright.amplitudes())), 1e-15);
        }
}

TEST(DarkBright, DarkDecouplesAndBrightCouplesWithHalfRabi) {
    for (const auto& d : random_draws(100, 4))
        for (Chirality c : {Chirality::L, Chirality::R}) {
            const DarkBright db = dark_bright_basis(c, d.theta, d.phi);
            const oracle::Mat h = oracle::hamiltonian(sign(c), d.theta, d.phi, d.omega, d.Phi, d.delta);
            const oracle::Vec ket0 = oracle::Vec::Unit(3, 2);
            EXPECT_LT(std::abs(db.dark.amplitudes().dot(h * ket0)), 1e-15);
            const cd coupling = db.bright.amplitudes().dot(h * ket0);
            EXPECT_NEAR(std::abs(coupling), d.omega / 2, 1e-15);
            EXPECT_NEAR(std::abs(coupling - 0.5 * d.omega * std::polar(1.0, d.Phi)), 0.0, 1e-14);
        }
}

TEST(DarkBrightFrame, ZeroDriveIsDiagonal) {
    const Operator h = enantiomer_hamiltonian(Chirality::R, constant_drive(0.5, 1.5, 0.0, 0.0, 0.3), 0.0);
    const Operator f = to_dark_bright_frame(h, Chirality::R, 0.5, 1.5);
    CMatrix expect = CMatrix::Zero(3, 3);
    expect(2, 2) = 0.3;
    EXPECT_LT(max_abs(f.matrix() - expect), 1e-15);
}

TEST(DarkBrightFrame, DarkRowVanishesAndSpectrumIsKept) {
    for (const auto& d : random_draws(100, 5))
        for (Chirality c : {Chirality::L, Chirality::R}) {
            const Operator h =
                enantiomer_hamiltonian(c, constant_drive(d.theta, d.phi, d.omega, d.Phi, d.delta), 0.0);
            const Operator f = to_dark_bright_frame(h, c, d.theta, d.phi);
            EXPECT_LT(f.matrix().row(0).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT(f.matrix().col(0).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_NEAR(std::abs(f(1, 2)), d.omega / 2, 1e-12);
            const Eigen::SelfAdjointEigenSolver<CMatrix> e1(h.matrix()), e2(f.matrix());
            EXPECT_LT((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
        }
}

TEST(DarkBrightFrame, MismatchedParametersAreRejected) {
    const Operator h = enantiomer_hamiltonian(Chirality::L, constant_drive(1.0, 0.5, 1.0, 0.0, 0.0), 0.0);
    EXPECT_THROW(to_dark_bright_frame(h, Chirality::R, 1.0, 0.5), ContractViolation);
    EXPECT_THROW(to_dark_bright_frame(h, Chirality::L, 1.3, 0.5), ContractViolation);
}

TEST(Qudit, EmbeddingPlacesCouplingsOnTheChiralLevel) {
    const Operator h = enantiomer_hamiltonian(Chirality::L, constant_drive(3 * pi / 4, 0.2, 1.0, 0.1, 0.3), 0.0);
    const Operator h4 = qudit_embed(Chirality::L, h);
    EXPECT_EQ(h4.dim(), 4);
    EXPECT_TRUE(h4.is_hermitian());
    EXPECT_GT(std::abs(h4(level4::k1L, level4::k0)), 0.1);
    EXPECT_EQ(h4(level4::k1R, level4::k0), cd(0));
    EXPECT_EQ(h4.matrix().row(level4::k1R).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(h4.matrix().col(level4::k1R).cwiseAbs().maxCoeff(), 0.0);

    const Operator r4 = qudit_embed(Chirality::R, Operator::zero(3));
    EXPECT_EQ(r4.matrix().cwiseAbs().maxCoeff(), 0.0);
}

TEST(Qudit, SpectatorPopulationIsConserved) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Chirality c : {Chirality::L, Chirality::R}) {
        const double a = u(rng), b = u(rng), w = 1 + u(rng);
        HamiltonianFn h = [&](double t) {
            const DriveParams p{1.0 + a, 2.0 * b, [&](double s) {
                                    return ControlSample{w * std::sin(s) * std::sin(s), a * s, b * std::cos(s)};
                                }};
            return qudit_embed(c, enantiomer_hamiltonian(c, p, t));
        };
        CVector psi(4);
        psi << 0.5, 0.5, 0.5, 0.5;
        const Propagation p = propagate(h, TimeGrid(6.0, 600), StateVector(psi));
        for (const auto& s : p.trajectory)
            EXPECT_NEAR(s.population(level4::spectator_level(c)), 0.25, 1e-12);
    }
}

TEST(Qudit, StateRoundTripAndSpectatorGuard) {
    const StateVector psi = StateVector::normalized((CVector(3) << 1, cd(0, 2), 0.5).finished());
    for (Chirality c : {Chirality::L, Chirality::R}) {
        const StateVector back = qudit_restrict(c, qudit_embed(c, psi));
        EXPECT_LT((back.amplitudes() - psi.amplitudes()).norm(), 1e-15);
    }
    EXPECT_THROW(qudit_restrict(Chirality::L, StateVector::basis(4, level4::k1R)), ContractViolation);
}
