#include "holochiral/pulsegen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "holochiral/errors.hpp"
#include "json.hpp"

namespace holochiral {

using std::numbers::pi;

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::NHQC: return "NHQC";
        case Scheme::NHQCPlus: return "NHQC+";
        case Scheme::STA: return "STA";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "NHQC" || name == "nhqc") return Scheme::NHQC;
    if (name == "NHQC+" || name == "nhqc+" || name == "NHQCplus" || name == "nhqcplus") return Scheme::NHQCPlus;
    if (name == "STA" || name == "sta") return Scheme::STA;
    return std::nullopt;
}

void LoopPath::validate() const {
    if (!(duration > 0.0)) throw ContractViolation("loop duration must be positive");
    if (!k || !k_dot || !beta || !beta_dot) throw ContractViolation("loop path is missing a component");
    if (std::abs(k(0.0) - pi) > 1e-12 || std::abs(k(duration) - pi) > 1e-12)
        throw ContractViolation("loop path must start and end at k = pi");
}

namespace {

// gamma folded into (0, 2 pi]; a zero holonomy is realised as a full turn.
double fold_phase(double gamma) {
    double g = std::fmod(gamma, 2.0 * pi);
    if (g <= 0.0) g += 2.0 * pi;
    return g;
}

double wrap_pm_pi(double x) { return std::remainder(x, 2.0 * pi); }

}  // namespace

LoopPath default_loop(double gamma, double duration, double amplitude) {
    if (!(amplitude > 0.0 && amplitude < pi)) throw std::invalid_argument("loop amplitude must lie in (0, pi)");
    if (!(duration > 0.0)) throw std::invalid_argument("loop duration must be positive");
    const double T = duration;
    const double A = amplitude;
    LoopPath path;
    path.duration = T;
    path.k = [=](double t) { return pi - A * std::pow(std::sin(pi * t / T), 2); };
    path.k_dot = [=](double t) { return -A * pi / T * std::sin(2.0 * pi * t / T); };

    // Unit-rate azimuth, then rescale so the enclosed phase is gamma.
    LoopPath unit = path;
    unit.beta = [=](double t) { return t / 2.0 - T / (4.0 * pi) * std::sin(2.0 * pi * t / T); };
    unit.beta_dot = [=](double t) { return std::pow(std::sin(pi * t / T), 2); };
    const double rate = fold_phase(gamma) / loop_phase(unit);

    path.beta = [=](double t) { return rate * (t / 2.0 - T / (4.0 * pi) * std::sin(2.0 * pi * t / T)); };
    path.beta_dot = [=](double t) { return rate * std::pow(std::sin(pi * t / T), 2); };
    return path;
}

double loop_phase(const LoopPath& path, int samples) {
    const double h = path.duration / samples;
    double acc = 0.0;
    for (int j = 0; j <= samples; ++j) {
        const double t = j * h;
        const double w = (j == 0 || j == samples) ? 0.5 : 1.0;
        acc += w * path.beta_dot(t) * std::pow(std::cos(path.k(t) / 2.0), 2);
    }
    return acc * h;
}

StateVector loop_basis_state(Chirality c, double theta, double phi, double k, double beta) {
    const DarkBright db = dark_bright_basis(c, theta, phi);
    CVector v = std::sin(k / 2.0) * db.bright.amplitudes();
    v(level3::k0) += std::cos(k / 2.0) * std::polar(1.0, -beta);
    return StateVector::normalized(std::move(v));
}

// ---------------------------------------------------------------------------

PulseSchedule PulseSchedule::from_law(Scheme scheme, GateAngles angles, TimeGrid grid, ControlLaw law,
                                      std::vector<double> segment_boundaries) {
    PulseSchedule s(scheme, angles, grid);
    const int n = grid.steps();
    s.omega_.resize(n + 1);
    s.phase_.resize(n + 1);
    s.detuning_.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        const ControlSample c = law(grid.time(j));
        if (!(c.omega >= 0.0)) throw ContractViolation("control law produced a negative envelope");
        s.omega_[j] = c.omega;
        s.phase_[j] = c.phase;
        s.detuning_[j] = c.detuning;
    }
    s.boundaries_ = std::move(segment_boundaries);
    s.law_ = std::move(law);
    return s;
}

PulseSchedule PulseSchedule::from_samples(Scheme scheme, GateAngles angles, TimeGrid grid,
                                          std::vector<double> omega, std::vector<double> phase,
                                          std::vector<double> detuning, std::vector<double> segment_boundaries) {
    const auto n = static_cast<std::size_t>(grid.steps() + 1);
    if (omega.size() != n || phase.size() != n || detuning.size() != n)
        throw ContractViolation("sample arrays must have one entry per grid point");
    for (double w : omega)
        if (!(w >= 0.0)) throw ContractViolation("envelope samples must be non-negative");
    PulseSchedule s(scheme, angles, grid);
    s.omega_ = std::move(omega);
    s.phase_ = std::move(phase);
    s.detuning_ = std::move(detuning);
    s.boundaries_ = std::move(segment_boundaries);
    return s;
}

int PulseSchedule::step_of(double t) const {
    const int j = static_cast<int>(std::floor(t / grid_.dt()));
    return std::clamp(j, 0, grid_.steps() - 1);
}

ControlSample PulseSchedule::at(double t) const {
    const int j = step_of(t);
    if (law_) {
        ControlSample c = law_(t);
        if (!gain_.empty()) c.omega *= gain_[j];
        return c;
    }
    const double f = std::clamp(t / grid_.dt() - j, 0.0, 1.0);
    auto lerp = [&](const std::vector<double>& v) { return (1.0 - f) * v[j] + f * v[j + 1]; };
    return {lerp(omega_), lerp(phase_), lerp(detuning_)};
}

DriveParams PulseSchedule::drive() const {
    return {angles_.theta, angles_.phi, [self = *this](double t) { return self.at(t); }};
}

void PulseSchedule::fill_hamiltonian(Chirality c, double t, CMatrix& h) const {
    fill_enantiomer_hamiltonian(c, angles_.theta, angles_.phi, at(t), h);
}

HamiltonianKernel PulseSchedule::kernel(Chirality c) const {
    return [this, c](double t, CMatrix& h) { fill_hamiltonian(c, t, h); };
}

PulseSchedule PulseSchedule::with_amplitude_gain(const std::vector<double>& gain) const {
    if (gain.size() != omega_.size()) throw ContractViolation("gain needs one entry per grid point");
    PulseSchedule out = *this;
    if (out.gain_.empty()) out.gain_.assign(gain.size(), 1.0);
    for (std::size_t j = 0; j < gain.size(); ++j) {
        if (!(gain[j] >= 0.0)) throw ContractViolation("amplitude gain must be non-negative");
        out.gain_[j] *= gain[j];
        out.omega_[j] *= gain[j];
    }
    return out;
}

double sampled_area(const PulseSchedule& s, double t0, double t1) {
    const double dt = s.grid().dt();
    const int j0 = static_cast<int>(std::lround(t0 / dt));
    const int j1 = static_cast<int>(std::lround(t1 / dt));
    if (std::abs(j0 * dt - t0) > 1e-9 * s.duration() || std::abs(j1 * dt - t1) > 1e-9 * s.duration())
        throw ResolutionError("area bounds must fall on grid points");
    double acc = 0.0;
    for (int j = j0; j < j1; ++j) acc += 0.5 * (s.omega()[j] + s.omega()[j + 1]);
    return acc * dt;
}

// ---------------------------------------------------------------------------

PulseSchedule nhqc_schedule(GateAngles angles, double duration, int steps) {
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
    if (steps % 2 != 0) throw ResolutionError("NHQC needs an even step count so T/2 is a grid point");
    const TimeGrid grid(duration, steps);
    const double tau = duration / 2.0;
    const double peak = 2.0 * pi / tau;  // sin^2 envelope of area pi over tau
    const double phase_b = pi + angles.gamma;
    auto law = [=](double t) -> ControlSample {
        if (t < tau) return {peak * std::pow(std::sin(pi * t / tau), 2), 0.0, 0.0};
        return {peak * std::pow(std::sin(pi * (t - tau) / tau), 2), phase_b, 0.0};
    };
    PulseSchedule s = PulseSchedule::from_law(Scheme::NHQC, angles, grid, law, {0.0, tau, duration});
    for (auto [a, b] : {std::pair{0.0, tau}, std::pair{tau, duration}}) {
        const double err = std::abs(sampled_area(s, a, b) - pi);
        if (err > 1e-9)
            throw ResolutionError("grid too coarse for the NHQC segments: area error " + std::to_string(err));
    }
    return s;
}

PulseSchedule nhqcplus_schedule(GateAngles angles, const LoopPath& path, double duration, int steps) {
    path.validate();
    if (std::abs(path.duration - duration) > 1e-12 * duration)
        throw ContractViolation("loop duration does not match the schedule duration");
    const TimeGrid grid(duration, steps);
    for (int j = 1; j < steps; ++j) {
        // The inverse formulas only break down at |0> (k = 0 mod 2pi), where beta is undefined;
        // k = pi is the regular starting point of the loop.
        const double k = path.k(grid.time(j));
        if (std::abs(std::sin(k)) < 1e-6 && std::cos(k) > 0.0)
            throw SingularPath("loop passes through |0> at t = " + std::to_string(grid.time(j)));
    }
    const double enclosed = loop_phase(path);
    if (std::abs(wrap_pm_pi(enclosed - angles.gamma)) > 1e-6)
        throw ConditionViolation("loop encloses phase " + std::to_string(enclosed) + ", expected " +
                                 std::to_string(angles.gamma));

    // Inverse engineering with the local dynamical phase held at zero:
    //   Omega sin(eta) = k_dot,  Omega cos(eta) = -beta_dot sin k,
    //   Phi = beta + eta,        Delta = beta_dot (1 - cos k).
    auto law = [path](double t) -> ControlSample {
        const double k = path.k(t);
        const double kd = path.k_dot(t);
        const double bd = path.beta_dot(t);
        const double g = -bd * std::sin(k);
        return {std::hypot(kd, g), path.beta(t) + std::atan2(kd, g), bd * (1.0 - std::cos(k))};
    };
    PulseSchedule s = PulseSchedule::from_law(Scheme::NHQCPlus, angles, grid, law, {0.0, duration});
    for (Chirality c : {Chirality::L, Chirality::R}) {
        const double r = check_zero_dynamical_phase(s, path, c);
        if (r > 1e-6) throw ConditionViolation("dynamical phase residual " + std::to_string(r));
    }
    return s;
}

namespace {

// Counterdiabatic chirped passage, folded into a resonant phase-modulated drive.
// Leg 1 sweeps the virtual detuning +D -> -D (B -> |0>), leg 2 retraces it.
ControlLaw sta_law(double duration, double return_phase) {
    const double T = duration;
    const double tau = T / 2.0;
    const double peak = kStaPeakRabi;
    const double sweep = kStaSweepWidth;
    return [=](double t) -> ControlSample {
        const bool back = t >= tau;
        const double s = back ? T - t : t;
        const double x = pi * s / tau;
        const double om = peak * std::pow(std::sin(x), 2);
        const double de = sweep * std::cos(x);
        double om_dot = peak * pi / tau * std::sin(2.0 * x);
        double de_dot = -sweep * pi / tau * std::sin(x);
        if (back) {
            om_dot = -om_dot;
            de_dot = -de_dot;
        }
        // Mixing angle rate of the field vector (Omega, -Delta).
        const double mix_dot = (-de * om_dot + om * de_dot) / (om * om + de * de);
        const cd field(om, -mix_dot);
        // Accumulated virtual detuning, removed from the phase.
        const double chirp = back ? -sweep * tau / pi * std::sin(pi * (T - t) / tau) : sweep * tau / pi * std::sin(x);
        return {std::abs(field), (back ? return_phase : 0.0) + std::arg(field) - chirp, 0.0};
    };
}

}  // namespace

PulseSchedule sta_schedule(double duration, double theta, double phi, int steps) {
    if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
    if (steps % 2 != 0) throw ResolutionError("STA needs an even step count so T/2 is a grid point");
    const TimeGrid grid(duration, steps);
    const GateAngles angles{theta, phi, pi};
    const std::vector<double> bounds{0.0, duration / 2.0, duration};

    // Calibrate the relative phase of the return leg so the bright state comes
    // back with e^{i pi}.
    const PulseSchedule probe = PulseSchedule::from_law(Scheme::STA, angles, grid, sta_law(duration, 0.0), bounds);
    const Operator u = propagator(probe.kernel(Chirality::L), grid, level3::kDim);
    const CVector b = dark_bright_basis(Chirality::L, theta, phi).bright.amplitudes();
    const cd overlap = b.dot(u.matrix() * b);
    if (std::abs(overlap) < 1.0 - 1e-6)
        throw ResolutionError("STA passage leaks population: |<B|U|B>| = " + std::to_string(std::abs(overlap)));
    const double return_phase = pi - std::arg(overlap);
    return PulseSchedule::from_law(Scheme::STA, angles, grid, sta_law(duration, return_phase), bounds);
}

// ---------------------------------------------------------------------------

double check_parallel_transport(const PulseSchedule& s, Chirality c) {
    if (s.scheme() != Scheme::NHQC) throw ContractViolation("parallel-transport check applies to NHQC schedules");
    const auto& a = s.angles();
    const DarkBright db = dark_bright_basis(c, a.theta, a.phi);
    CMatrix basis(3, 2);
    basis.col(0) = db.dark.amplitudes();
    basis.col(1) = db.bright.amplitudes();

    const TimeGrid& grid = s.grid();
    CMatrix u = CMatrix::Identity(3, 3);
    CMatrix h(3, 3);
    double residual = 0.0;
    for (int j = 0; j <= grid.steps(); ++j) {
        s.fill_hamiltonian(c, grid.time(j), h);
        const CMatrix frame = u * basis;
        residual = std::max(residual, max_abs(frame.adjoint() * h * frame));
        if (j == grid.steps()) break;
        s.fill_hamiltonian(c, grid.midpoint(j), h);
        u = step_unitary_matrix(h, grid.dt()) * u;
    }
    return residual;
}

double check_zero_dynamical_phase(const PulseSchedule& s, const LoopPath& path, Chirality c) {
    if (s.scheme() != Scheme::NHQCPlus) throw ContractViolation("dynamical-phase check applies to NHQC+ schedules");
    const auto& a = s.angles();
    const TimeGrid& grid = s.grid();
    const CVector dark = dark_bright_basis(c, a.theta, a.phi).dark.amplitudes();
    CMatrix frame(3, 2);
    frame.col(0) = dark;
    CMatrix h(3, 3);
    CMatrix integral = CMatrix::Zero(2, 2);
    for (int j = 0; j <= grid.steps(); ++j) {
        const double t = grid.time(j);
        frame.col(1) = loop_basis_state(c, a.theta, a.phi, path.k(t), path.beta(t)).amplitudes();
        s.fill_hamiltonian(c, t, h);
        const double w = (j == 0 || j == grid.steps()) ? 0.5 : 1.0;
        integral += w * (frame.adjoint() * h * frame);
    }
    return max_abs(integral) * grid.dt();
}

// ---------------------------------------------------------------------------

namespace {

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string schedule_csv(const PulseSchedule& s) {
    std::string out = "t,omega,phi,delta\n";
    const TimeGrid& g = s.grid();
    for (int j = 0; j <= g.steps(); ++j) {
        out += format17(g.time(j));
        out += ',';
        out += format17(s.omega()[j]);
        out += ',';
        out += format17(s.phase()[j]);
        out += ',';
        out += format17(s.detuning()[j]);
        out += '\n';
    }
    return out;
}

std::string schedule_sidecar(const PulseSchedule& s) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(s.scheme());
    j["theta"] = s.angles().theta;
    j["phi"] = s.angles().phi;
    j["gamma"] = s.angles().gamma;
    j["duration"] = s.duration();
    j["steps"] = s.grid().steps();
    j["segment_boundaries"] = s.segment_boundaries();
    return j.dump(2) + "\n";
}

PulseSchedule parse_schedule(std::string_view csv, std::string_view sidecar) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(sidecar);
    } catch (const nlohmann::json::exception& e) {
        throw ContractViolation(std::string("bad schedule sidecar: ") + e.what());
    }
    const auto scheme = parse_scheme(meta.at("scheme").get<std::string>());
    if (!scheme) throw ContractViolation("unknown scheme in sidecar");
    const GateAngles angles{meta.at("theta").get<double>(), meta.at("phi").get<double>(),
                            meta.at("gamma").get<double>()};
    const TimeGrid grid(meta.at("duration").get<double>(), meta.at("steps").get<int>());

    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line) || line != "t,omega,phi,delta") throw ContractViolation("bad schedule CSV header");
    std::vector<double> om, ph, de;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0, w = 0, p = 0, d = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &t, &w, &p, &d) != 4)
            throw ContractViolation("bad schedule CSV row: " + line);
        om.push_back(w);
        ph.push_back(p);
        de.push_back(d);
    }
    return PulseSchedule::from_samples(*scheme, angles, grid, std::move(om), std::move(ph), std::move(de),
                                       meta.at("segment_boundaries").get<std::vector<double>>());
}

}  // namespace holochiral
