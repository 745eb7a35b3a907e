#pragma once

// Dense complex linear algebra for Hilbert spaces of dimension 2..4 and the
// piecewise-constant midpoint propagator used everywhere else.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace holochiral {

using cd = std::complex<double>;

inline constexpr int kMaxDim = 4;

// Fixed upper bound on the size keeps every matrix on the stack.
using CMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using CVector = Eigen::Matrix<cd, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;

double max_abs(const CMatrix& m);

class StateVector {
  public:
    // Amplitudes must already be normalized to kNormTolerance.
    explicit StateVector(CVector amplitudes);

    // Rescales to unit norm; throws ContractViolation on a zero vector.
    static StateVector normalized(CVector amplitudes);
    static StateVector basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }
    cd operator[](int i) const { return amps_(i); }
    double population(int i) const { return std::norm(amps_(i)); }
    double norm_squared() const { return amps_.squaredNorm(); }

  private:
    CVector amps_;
};

class Operator {
  public:
    enum class Kind { General, Hermitian, Unitary };

    static Operator general(CMatrix m);
    // Validating factories; throw ContractViolation when the flag does not hold.
    static Operator hermitian(CMatrix m);
    static Operator unitary(CMatrix m, double tol = kUnitaryTolerance);
    static Operator identity(int dim);
    static Operator zero(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    Kind kind() const { return kind_; }
    bool is_hermitian() const { return kind_ == Kind::Hermitian; }
    bool is_unitary() const { return kind_ == Kind::Unitary; }
    const CMatrix& matrix() const { return m_; }
    cd operator()(int r, int c) const { return m_(r, c); }

    StateVector apply(const StateVector& psi) const;

  private:
    Operator(CMatrix m, Kind kind) : m_(std::move(m)), kind_(kind) {}

    CMatrix m_;
    Kind kind_;
};

double unitarity_defect(const CMatrix& u);
double hermiticity_defect(const CMatrix& h);

class TimeGrid {
  public:
    TimeGrid(double duration, int steps);

    double duration() const { return duration_; }
    int steps() const { return steps_; }
    double dt() const { return duration_ / steps_; }
    double time(int j) const { return duration_ * j / steps_; }
    double midpoint(int j) const { return duration_ * (j + 0.5) / steps_; }

  private:
    double duration_;
    int steps_;
};

// exp(-i H dt) by eigendecomposition of the hermitian generator.
Operator step_unitary(const Operator& h, double dt);

// Unchecked kernel for hot loops; `h` must be hermitian.
CMatrix step_unitary_matrix(const CMatrix& h, double dt);

using HamiltonianFn = std::function<Operator(double)>;
// Hot-loop variant: writes H(t) into the supplied matrix.
using HamiltonianKernel = std::function<void(double, CMatrix&)>;

struct Propagation {
    std::vector<StateVector> trajectory;  // psi(t_j), j = 0..n
    Operator propagator;                  // U(T, 0)
};

// Midpoint rule: U(T,0) = prod_j exp(-i H(t_{j+1/2}) dt).
Propagation propagate(const HamiltonianFn& hamiltonian, const TimeGrid& grid, const StateVector& psi0);

// Propagator only, for sweeps that never look at the trajectory.
Operator propagator(const HamiltonianKernel& hamiltonian, const TimeGrid& grid, int dim);

double state_fidelity(const StateVector& psi, const StateVector& phi);

// |Tr(U^dag V)|^2 / d^2.
double unitary_fidelity(const Operator& u, const Operator& v);

}  // namespace holochiral
