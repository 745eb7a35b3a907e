#include "holochiral/statecore.hpp"

#include <cmath>
#include <string>

#include "holochiral/errors.hpp"

namespace holochiral {

double max_abs(const CMatrix& m) {
    double out = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out = std::max(out, std::abs(m(r, c)));
    return out;
}

double unitarity_defect(const CMatrix& u) {
    const CMatrix eye = CMatrix::Identity(u.rows(), u.cols());
    return max_abs(u.adjoint() * u - eye);
}

double hermiticity_defect(const CMatrix& h) { return max_abs(h - h.adjoint()); }

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2 || amps_.size() > kMaxDim)
        throw ContractViolation("state dimension must be in [2, 4], got " + std::to_string(amps_.size()));
    const double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > kNormTolerance)
        throw ContractViolation("state is not normalized: |psi|^2 = " + std::to_string(n2));
}

StateVector StateVector::normalized(CVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0 || !std::isfinite(n)) throw ContractViolation("cannot normalize a zero or non-finite vector");
    amplitudes /= n;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(int dim, int index) {
    if (index < 0 || index >= dim) throw ContractViolation("basis index out of range");
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

Operator Operator::general(CMatrix m) {
    if (m.rows() != m.cols()) throw ContractViolation("operator must be square");
    return Operator(std::move(m), Kind::General);
}

Operator Operator::hermitian(CMatrix m) {
    if (m.rows() != m.cols()) throw ContractViolation("operator must be square");
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance)
        throw ContractViolation("operator is not hermitian: |H - H^dag|_max = " + std::to_string(defect));
    return Operator(std::move(m), Kind::Hermitian);
}

Operator Operator::unitary(CMatrix m, double tol) {
    if (m.rows() != m.cols()) throw ContractViolation("operator must be square");
    const double defect = unitarity_defect(m);
    if (defect > tol)
        throw ContractViolation("operator is not unitary: |U^dag U - I|_max = " + std::to_string(defect));
    return Operator(std::move(m), Kind::Unitary);
}

Operator Operator::identity(int dim) { return Operator(CMatrix::Identity(dim, dim), Kind::Unitary); }

Operator Operator::zero(int dim) { return Operator(CMatrix::Zero(dim, dim), Kind::Hermitian); }

StateVector Operator::apply(const StateVector& psi) const {
    if (psi.dim() != dim()) throw ContractViolation("dimension mismatch in Operator::apply");
    CVector out = m_ * psi.amplitudes();
    if (is_unitary() && std::abs(out.squaredNorm() - 1.0) > kUnitaryTolerance)
        throw NumericalFailure("unitary apply changed the norm by more than the unitarity tolerance");
    return StateVector::normalized(std::move(out));
}

TimeGrid::TimeGrid(double duration, int steps) : duration_(duration), steps_(steps) {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw std::invalid_argument("grid duration must be positive");
    if (steps < 2) throw std::invalid_argument("grid needs at least 2 steps");
}

CMatrix step_unitary_matrix(const CMatrix& h, double dt) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    const auto& vecs = eig.eigenvectors();
    const auto& vals = eig.eigenvalues();
    CMatrix scaled = vecs;
    for (Eigen::Index k = 0; k < vals.size(); ++k) scaled.col(k) *= std::polar(1.0, -vals(k) * dt);
    return scaled * vecs.adjoint();
}

Operator step_unitary(const Operator& h, double dt) {
    if (!h.is_hermitian()) throw ContractViolation("step_unitary needs a hermitian generator");
    if (!(dt > 0.0)) throw std::invalid_argument("step_unitary needs dt > 0");
    return Operator::unitary(step_unitary_matrix(h.matrix(), dt));
}

namespace {

constexpr double kPropagatorUnitarity = 1e-8;

void require_unitary(const CMatrix& u) {
    const double defect = unitarity_defect(u);
    if (!(defect <= kPropagatorUnitarity))
        throw NumericalFailure("propagator lost unitarity: defect " + std::to_string(defect));
}

}  // namespace

Propagation propagate(const HamiltonianFn& hamiltonian, const TimeGrid& grid, const StateVector& psi0) {
    const int d = psi0.dim();
    const double dt = grid.dt();
    CMatrix u = CMatrix::Identity(d, d);
    std::vector<StateVector> traj;
    traj.reserve(grid.steps() + 1);
    traj.push_back(psi0);
    for (int j = 0; j < grid.steps(); ++j) {
        const Operator h = hamiltonian(grid.midpoint(j));
        if (!h.is_hermitian()) throw ContractViolation("hamiltonian_fn must return hermitian operators");
        if (h.dim() != d) throw ContractViolation("hamiltonian dimension does not match the state");
        u = step_unitary_matrix(h.matrix(), dt) * u;
        CVector next = u * psi0.amplitudes();
        if (std::abs(next.squaredNorm() - 1.0) > 1e-10)
            throw NumericalFailure("norm drift during propagation at step " + std::to_string(j));
        traj.push_back(StateVector::normalized(std::move(next)));
    }
    require_unitary(u);
    return {std::move(traj), Operator::unitary(std::move(u), kPropagatorUnitarity)};
}

Operator propagator(const HamiltonianKernel& hamiltonian, const TimeGrid& grid, int dim) {
    const double dt = grid.dt();
    CMatrix u = CMatrix::Identity(dim, dim);
    CMatrix h(dim, dim);
    for (int j = 0; j < grid.steps(); ++j) {
        hamiltonian(grid.midpoint(j), h);
        u = step_unitary_matrix(h, dt) * u;
    }
    require_unitary(u);
    return Operator::unitary(std::move(u), kPropagatorUnitarity);
}

double state_fidelity(const StateVector& psi, const StateVector& phi) {
    if (psi.dim() != phi.dim()) throw ContractViolation("state_fidelity: dimension mismatch");
    return std::min(1.0, std::norm(psi.amplitudes().dot(phi.amplitudes())));
}

double unitary_fidelity(const Operator& u, const Operator& v) {
    if (u.dim() != v.dim()) throw ContractViolation("unitary_fidelity: dimension mismatch");
    const double d = u.dim();
    return std::min(1.0, std::norm((u.matrix().adjoint() * v.matrix()).trace()) / (d * d));
}

}  // namespace holochiral
