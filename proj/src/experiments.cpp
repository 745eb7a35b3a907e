#include "holochiral/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "holochiral/errors.hpp"
#include "holochiral/holonomy.hpp"

namespace holochiral {

using std::numbers::pi;

SchemeConfig default_scheme_config(Scheme scheme) {
    return {scheme, {3.0 * pi / 4.0, pi / 2.0, pi}, pi / 2.0, 4.0 * pi, kDefaultSteps};
}

PulseSchedule build_schedule(const SchemeConfig& cfg) {
    switch (cfg.scheme) {
        case Scheme::NHQC: return nhqc_schedule(cfg.angles, cfg.duration, cfg.steps);
        case Scheme::NHQCPlus:
            return nhqcplus_schedule(cfg.angles, default_loop(cfg.angles.gamma, cfg.duration), cfg.duration,
                                     cfg.steps);
        case Scheme::STA: return sta_schedule(cfg.duration, cfg.angles.theta, cfg.angles.phi, cfg.steps);
    }
    throw ContractViolation("unknown scheme");
}

StateVector prepare_initial(double phi0) {
    CVector v = CVector::Zero(level3::kDim);
    v(level3::k1) = 1.0 / std::sqrt(2.0);
    v(level3::k2) = std::polar(1.0 / std::sqrt(2.0), phi0);
    return StateVector::normalized(std::move(v));
}

bool NoiseDescriptor::operator==(const NoiseDescriptor& o) const {
    return spec.delta == o.spec.delta && spec.alpha == o.spec.alpha && spec.beta == o.spec.beta &&
           spec.seed == o.spec.seed && spec.stream == o.spec.stream && spec.per_sample == o.spec.per_sample &&
           realization == o.realization && clipped == o.clipped;
}

namespace {

// FNV-1a over the bit patterns of the gain array.
std::uint64_t fingerprint(const std::vector<double>& gain) {
    std::uint64_t h = 1469598103934665603ull;
    for (double g : gain) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &g, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

std::string describe(const PulseSchedule& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s theta=%.17g phi=%.17g gamma=%.17g T=%.17g n=%d",
                  std::string(to_string(s.scheme())).c_str(), s.angles().theta, s.angles().phi, s.angles().gamma,
                  s.duration(), s.grid().steps());
    return buf;
}

}  // namespace

NoisyField make_field(const PulseSchedule& ideal, const NoiseSpec& spec) {
    StochasticOutcome out = apply_noise(ideal, spec);
    NoiseDescriptor d{spec, fingerprint(out.schedule.amplitude_gain()), out.clipped};
    return {std::move(out.schedule), d};
}

double DiscriminationResult::population(int level) const {
    switch (level) {
        case level3::k1: return p1;
        case level3::k2: return p2;
        case level3::k0: return p0;
    }
    throw ContractViolation("unknown detection level");
}

DiscriminationResult run_discrimination(const NoisyField& field, Chirality c, double phi0) {
    const Operator u = propagator(field.schedule.kernel(c), field.schedule.grid(), level3::kDim);
    const StateVector out = u.apply(prepare_initial(phi0));
    return {c,
            out.population(level3::k1),
            out.population(level3::k2),
            out.population(level3::k0),
            out,
            describe(field.schedule),
            field.noise};
}

DiscriminationResult run_discrimination(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise) {
    return run_discrimination(make_field(build_schedule(cfg), noise), c, cfg.phi0);
}

DiscriminationResult run_discrimination_qudit(const NoisyField& field, Chirality c, double phi0) {
    const PulseSchedule& s = field.schedule;
    HamiltonianKernel k4 = [&s, c](double t, CMatrix& h) {
        CMatrix h3(3, 3);
        s.fill_hamiltonian(c, t, h3);
        h = qudit_embed(c, Operator::general(h3)).matrix();
    };
    const Operator u = propagator(k4, s.grid(), level4::kDim);
    const StateVector out4 = u.apply(qudit_embed(c, prepare_initial(phi0)));
    const StateVector out = qudit_restrict(c, out4);
    return {c,
            out.population(level3::k1),
            out.population(level3::k2),
            out.population(level3::k0),
            out,
            describe(s),
            field.noise};
}

double contrast(const DiscriminationResult& left, const DiscriminationResult& right, int detect) {
    if (!(left.noise == right.noise) || left.schedule != right.schedule)
        throw ContractViolation("contrast needs both enantiomers driven by the same field realization");
    return std::abs(left.population(detect) - right.population(detect));
}

Trace population_trace(const PulseSchedule& s, Chirality c, double phi0) {
    HamiltonianFn h = [&s, c](double t) {
        CMatrix m(3, 3);
        s.fill_hamiltonian(c, t, m);
        return Operator::hermitian(std::move(m));
    };
    Propagation p = propagate(h, s.grid(), prepare_initial(phi0));
    Trace tr{c, {}, std::move(p.trajectory)};
    tr.rows.reserve(tr.states.size());
    for (std::size_t j = 0; j < tr.states.size(); ++j) {
        const StateVector& psi = tr.states[j];
        const double p1 = psi.population(level3::k1);
        const double p2 = psi.population(level3::k2);
        tr.rows.push_back({s.grid().time(static_cast<int>(j)), p1, p2, psi.population(level3::k0), p1 + p2});
    }
    return tr;
}

StateVector detection_pulse(const StateVector& psi4, Chirality c, const TimeGrid& grid) {
    if (psi4.dim() != level4::kDim) throw ContractViolation("detection pulse acts on the qudit");
    const double T = grid.duration();
    const double peak = 2.0 * pi / T;  // sin^2 envelope of area pi
    const int a = level4::chiral_level(c);
    HamiltonianFn h = [=](double t) {
        CMatrix m = CMatrix::Zero(4, 4);
        const double half = 0.5 * peak * std::pow(std::sin(pi * t / T), 2);
        m(a, level4::k0) = half;
        m(level4::k0, a) = half;
        return Operator::hermitian(std::move(m));
    };
    return propagate(h, grid, psi4).trajectory.back();
}

std::vector<double> default_offset_grid() {
    std::vector<double> g;
    for (int i = -5; i <= 5; ++i) g.push_back(0.04 * i);
    return g;
}

std::vector<double> default_alpha_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

SweepResult run_sweep(const SchemeConfig& cfg, std::span<const SweepPoint> points, const SweepOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
    const PulseSchedule ideal = build_schedule(cfg);
    SweepResult res{cfg.scheme, {points.begin(), points.end()}, opt.trials, opt.master_seed, {}};
    const std::size_t jobs = points.size() * static_cast<std::size_t>(opt.trials);
    res.rows.resize(jobs, SweepRow{cfg.scheme, {}, 0, 0.0, {}, {}, opt.master_seed});

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            try {
                const auto point_idx = static_cast<std::uint32_t>(job / opt.trials);
                const auto trial = static_cast<std::uint32_t>(job % opt.trials);
                const SweepPoint& pt = points[point_idx];
                NoiseSpec spec{pt.delta, pt.alpha, pt.beta, opt.master_seed, trial_stream(point_idx, trial),
                               opt.per_sample};
                const NoisyField field = make_field(ideal, spec);
                const DiscriminationResult l = run_discrimination(field, Chirality::L, cfg.phi0);
                const DiscriminationResult r = run_discrimination(field, Chirality::R, cfg.phi0);
                SweepRow& row = res.rows[job];
                row.point = pt;
                row.trial = static_cast<int>(trial);
                row.xi = contrast(l, r, opt.detect);
                row.left = {l.p1, l.p2, l.p0};
                row.right = {r.p1, r.p2, r.p0};
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(jobs, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return res;
}

SweepResult offset_sweep(const SchemeConfig& cfg, std::span<const double> deltas, double alpha, double beta,
                         const SweepOptions& opt) {
    std::vector<SweepPoint> pts;
    for (double d : deltas) pts.push_back({d, alpha, beta});
    return run_sweep(cfg, pts, opt);
}

SweepResult random_noise_sweep(const SchemeConfig& cfg, std::span<const SweepPoint> weights,
                               const SweepOptions& opt) {
    for (const auto& w : weights)
        if (w.delta != 0.0) throw std::invalid_argument("random-noise sweep points carry no offset");
    return run_sweep(cfg, weights, opt);
}

std::vector<PointSummary> summarize(const SweepResult& r) {
    std::vector<PointSummary> out;
    for (std::size_t p = 0; p < r.points.size(); ++p) {
        double sum = 0.0;
        double sq = 0.0;
        for (int t = 0; t < r.trials; ++t) {
            const double xi = r.rows[p * r.trials + t].xi;
            sum += xi;
            sq += xi * xi;
        }
        const double n = r.trials;
        const double mean = sum / n;
        const double var = n > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1)) : 0.0;
        out.push_back({r.points[p], mean, std::sqrt(var / n)});
    }
    return out;
}

namespace {

void append17(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
}

}  // namespace

std::string sweep_csv(const SweepResult& r) {
    std::string out = "scheme,delta,alpha,beta,trial,xi,p1_L,p2_L,p0_L,p1_R,p2_R,p0_R,seed\n";
    for (const SweepRow& row : r.rows) {
        out += to_string(row.scheme);
        for (double v : {row.point.delta, row.point.alpha, row.point.beta}) {
            out += ',';
            append17(out, v);
        }
        out += ',' + std::to_string(row.trial) + ',';
        append17(out, row.xi);
        for (double v : row.left) {
            out += ',';
            append17(out, v);
        }
        for (double v : row.right) {
            out += ',';
            append17(out, v);
        }
        out += ',' + std::to_string(row.seed) + '\n';
    }
    return out;
}

std::string trace_csv(const Trace& tr) {
    std::string out = "t,p1,p2,p0,ptotal\n";
    for (const TraceRow& r : tr.rows) {
        append17(out, r.t);
        for (double v : {r.p1, r.p2, r.p0, r.ptotal}) {
            out += ',';
            append17(out, v);
        }
        out += '\n';
    }
    return out;
}

std::string amplitude_csv(const Trace& tr) {
    std::string out = "t,re1,im1,re2,im2,re0,im0\n";
    for (std::size_t j = 0; j < tr.rows.size(); ++j) {
        append17(out, tr.rows[j].t);
        for (int lvl : {level3::k1, level3::k2, level3::k0}) {
            const cd a = tr.states[j][lvl];
            out += ',';
            append17(out, a.real());
            out += ',';
            append17(out, a.imag());
        }
        out += '\n';
    }
    return out;
}

double gate_fidelity(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise) {
    const NoisyField field = make_field(build_schedule(cfg), noise);
    const Operator u = propagator(field.schedule.kernel(c), field.schedule.grid(), level3::kDim);
    const auto& a = cfg.angles;
    return block_fidelity(u, target_unitary(a.theta, a.phi, a.gamma, c));
}

// ---------------------------------------------------------------------------
// Process tomography on span{|1>, |2>}.

namespace {

std::array<CMatrix, 4> pauli_basis() {
    const cd i(0, 1);
    CMatrix id = CMatrix::Identity(2, 2);
    CMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    return {id, x, y, z};
}

// Density matrices of |1>, |2>, |+>, |+i> on the qubit.
std::array<CMatrix, 4> tomography_inputs() {
    std::array<CVector, 4> kets;
    for (auto& k : kets) k = CVector::Zero(2);
    kets[0](0) = 1.0;
    kets[1](1) = 1.0;
    kets[2] << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    kets[3] << 1.0 / std::sqrt(2.0), cd(0, 1.0 / std::sqrt(2.0));
    std::array<CMatrix, 4> rho;
    for (int k = 0; k < 4; ++k) rho[k] = kets[k] * kets[k].adjoint();
    return rho;
}

}  // namespace

CMatrix reconstruct_chi(const std::array<CMatrix, 4>& out) {
    const cd i(0, 1);
    // Channel images of |a><b| by linearity.
    const CMatrix e00 = out[0];
    const CMatrix e11 = out[1];
    const CMatrix e01 = out[2] + i * out[3] - 0.5 * (1.0 + i) * (e00 + e11);
    const CMatrix e10 = out[2] - i * out[3] - 0.5 * (1.0 - i) * (e00 + e11);
    const std::array<std::array<const CMatrix*, 2>, 2> e{{{&e00, &e01}, {&e10, &e11}}};

    // Choi matrix C = sum_ab |a><b| (x) E(|a><b|).
    CMatrix choi(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) choi(2 * a + k, 2 * b + l) = (*e[a][b])(k, l);

    // chi_mn = <<P_m| C |P_n>> / 4 with |P>> = sum_a |a> (x) P|a>.
    const auto paulis = pauli_basis();
    std::array<CVector, 4> vec;
    for (int m = 0; m < 4; ++m) {
        vec[m] = CVector::Zero(4);
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < 2; ++k) vec[m](2 * a + k) = paulis[m](k, a);
    }
    CMatrix chi(4, 4);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) chi(m, n) = vec[m].dot(choi * vec[n]) / 4.0;

    const cd tr = chi.trace();
    if (std::abs(tr) < 1e-12) throw NumericalFailure("process matrix has zero trace (all population leaked)");
    chi /= tr.real();
    chi = 0.5 * (chi + chi.adjoint());
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(chi);
    if (eig.eigenvalues().minCoeff() < -1e-8)
        throw NumericalFailure("reconstructed process matrix is not positive semidefinite");
    return chi;
}

CMatrix chi_of_unitary(const CMatrix& v) {
    const auto in = tomography_inputs();
    std::array<CMatrix, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = v * in[k] * v.adjoint();
    return reconstruct_chi(out);
}

QPTResult qpt(const SchemeConfig& cfg, Chirality c, const NoiseSpec& noise) {
    const NoisyField field = make_field(build_schedule(cfg), noise);
    const Operator u = propagator(field.schedule.kernel(c), field.schedule.grid(), level3::kDim);
    // Inputs live on |1>, |2>; outputs are projected back onto that subspace.
    const CMatrix block = qubit_block(u);
    const auto in = tomography_inputs();
    std::array<CMatrix, 4> out;
    for (int k = 0; k < 4; ++k) out[k] = block * in[k] * block.adjoint();
    CMatrix chi = reconstruct_chi(out);
    const auto& a = cfg.angles;
    const CMatrix ideal = chi_of_unitary(qubit_block(target_unitary(a.theta, a.phi, a.gamma, c)));
    const double f = (ideal * chi).trace().real();
    return {std::move(chi), std::clamp(f, 0.0, 1.0)};
}

std::vector<std::int64_t> shot_sampling(std::span<const double> populations, std::int64_t shots,
                                        std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shot_sampling needs at least one shot");
    double total = 0.0;
    for (double p : populations) {
        if (!(p >= -1e-12)) throw std::invalid_argument("populations must be non-negative");
        total += p;
    }
    if (populations.empty() || std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("populations must sum to 1");
    std::vector<double> cdf;
    double acc = 0.0;
    for (double p : populations) cdf.push_back(acc += std::max(p, 0.0));
    const CounterStream rng(seed, 0);
    std::vector<std::int64_t> counts(populations.size(), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform(static_cast<std::uint64_t>(s), 0) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = std::min<std::size_t>(it - cdf.begin(), counts.size() - 1);
        // A zero-probability outcome can only be hit by round-off; step back to a populated one.
        while (populations[k] <= 0.0 && k > 0) --k;
        ++counts[k];
    }
    return counts;
}

std::vector<PhaseScanPoint> phase_scan(const SchemeConfig& cfg, int samples) {
    if (samples < 2) throw std::invalid_argument("phase scan needs at least 2 samples");
    std::vector<PhaseScanPoint> out;
    for (int i = 0; i < samples; ++i) {
        SchemeConfig c = cfg;
        c.angles.phi = 2.0 * pi * i / samples;
        const NoisyField field = make_field(build_schedule(c), {});
        const auto l = run_discrimination(field, Chirality::L, cfg.phi0);
        const auto r = run_discrimination(field, Chirality::R, cfg.phi0);
        out.push_back({c.angles.phi, contrast(l, r)});
    }
    return out;
}

}  // namespace holochiral
