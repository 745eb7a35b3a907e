#include "holochiral/cli.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <regex>
#include <set>

#include <yaml-cpp/yaml.h>

#include "holochiral/errors.hpp"
#include "holochiral/holonomy.hpp"
#include "json.hpp"

namespace holochiral {

using std::numbers::pi;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::EmitPulses, "emit-pulses"},     {Command::Discriminate, "discriminate"},
    {Command::Trace, "trace"},                {Command::SweepOffset, "sweep-offset"},
    {Command::SweepRandom, "sweep-random"},   {Command::GateFidelity, "gate-fidelity"},
    {Command::Qpt, "qpt"},
};

}  // namespace

std::string_view to_string(Command c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "?";
}

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [cmd, n] : kCommands)
        if (n == name) return cmd;
    return std::nullopt;
}

bool RunConfig::operator==(const RunConfig& o) const {
    auto same_points = [](const std::vector<SweepPoint>& a, const std::vector<SweepPoint>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].delta != b[i].delta || a[i].alpha != b[i].alpha || a[i].beta != b[i].beta) return false;
        return true;
    };
    return command == o.command && scheme == o.scheme && theta == o.theta && phi == o.phi && gamma == o.gamma &&
           phi0 == o.phi0 && duration == o.duration && steps == o.steps && chirality == o.chirality &&
           detect == o.detect && delta == o.delta && alpha == o.alpha && beta == o.beta &&
           per_sample == o.per_sample && trials == o.trials && offset_grid == o.offset_grid &&
           same_points(weight_grid, o.weight_grid) && shots == o.shots && threads == o.threads && seed == o.seed &&
           out_dir == o.out_dir;
}

RunConfig default_run_config(Command command, Scheme scheme) {
    RunConfig c;
    c.command = command;
    c.scheme = scheme;
    const SchemeConfig s = default_scheme_config(scheme);
    c.theta = s.angles.theta;
    c.phi = s.angles.phi;
    c.gamma = s.angles.gamma;
    c.phi0 = s.phi0;
    c.duration = s.duration;
    c.steps = s.steps;
    c.offset_grid = default_offset_grid();
    for (double a : default_alpha_grid()) c.weight_grid.push_back({0.0, a, 0.0});
    return c;
}

namespace {

std::optional<double> parse_real(std::string_view text) {
    const std::string s(text);
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) return std::nullopt;
    return v;
}

}  // namespace

double parse_angle(std::string_view text) {
    if (auto v = parse_real(text)) return *v;
    static const std::regex re(R"(^\s*([+-]?)((?:[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::cmatch m;
    const std::string s(text);
    if (!std::regex_match(s.c_str(), m, re)) throw std::invalid_argument("not an angle: '" + s + "'");
    double coef = m[2].length() ? *parse_real(m[2].str()) : 1.0;
    if (m[1] == "-") coef = -coef;
    double v = coef * pi;
    if (m[3].matched) {
        const double den = *parse_real(m[3].str());
        if (den == 0.0) throw std::invalid_argument("angle divides by zero: '" + s + "'");
        v /= den;
    }
    return v;
}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

struct Reader {
    std::map<std::string, int> lines;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        auto it = lines.find(key);
        throw ConfigError(key, it == lines.end() ? 0 : it->second, key + ": " + what);
    }

    std::string scalar(const std::string& key, const YAML::Node& n) const {
        if (!n.IsScalar()) fail(key, "expected a scalar");
        return n.Scalar();
    }

    double real(const std::string& key, const YAML::Node& n) const {
        auto v = parse_real(scalar(key, n));
        if (!v) fail(key, "expected a number, got '" + n.Scalar() + "'");
        return *v;
    }

    double angle(const std::string& key, const YAML::Node& n) const {
        try {
            return parse_angle(scalar(key, n));
        } catch (const std::invalid_argument& e) {
            fail(key, e.what());
        }
    }

    std::int64_t integer(const std::string& key, const YAML::Node& n) const {
        const std::string s = scalar(key, n);
        char* end = nullptr;
        errno = 0;
        const long long v = std::strtoll(s.c_str(), &end, 10);
        if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) fail(key, "expected an integer, got '" + s + "'");
        return v;
    }

    std::uint64_t unsigned_integer(const std::string& key, const YAML::Node& n) const {
        const std::string s = scalar(key, n);
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE)
            fail(key, "expected a non-negative integer, got '" + s + "'");
        return v;
    }

    bool boolean(const std::string& key, const YAML::Node& n) const {
        const std::string s = scalar(key, n);
        if (s == "true") return true;
        if (s == "false") return false;
        fail(key, "expected true or false, got '" + s + "'");
    }
};

void check(bool ok, const Reader& r, const std::string& key, const std::string& what) {
    if (!ok) r.fail(key, what);
}

void validate_with(const RunConfig& c, const Reader& r) {
    for (const auto& [key, v] : {std::pair<const char*, double>{"theta", c.theta}, {"phi", c.phi},
                                 {"gamma", c.gamma}, {"phi0", c.phi0}})
        check(std::isfinite(v), r, key, "must be finite");
    check(std::isfinite(c.duration) && c.duration > 0.0, r, "duration", "must be > 0");
    check(c.steps >= 2 && c.steps % 2 == 0, r, "steps", "must be an even integer >= 2");
    check(c.chirality == "L" || c.chirality == "R" || c.chirality == "both", r, "chirality",
          "must be L, R or both");
    check(c.detect == 1 || c.detect == 2, r, "detect", "must be 1 or 2");
    check(std::isfinite(c.delta) && 1.0 + c.delta > 0.0, r, "delta", "needs 1 + delta > 0");
    check(std::isfinite(c.alpha) && c.alpha >= 0.0, r, "alpha", "must be >= 0");
    check(std::isfinite(c.beta) && c.beta >= 0.0, r, "beta", "must be >= 0");
    check(c.trials >= 1, r, "trials", "must be >= 1");
    check(!c.offset_grid.empty(), r, "offset_grid", "must not be empty");
    for (double d : c.offset_grid) check(std::isfinite(d) && 1.0 + d > 0.0, r, "offset_grid", "needs 1 + delta > 0");
    check(!c.weight_grid.empty(), r, "weight_grid", "must not be empty");
    for (const auto& w : c.weight_grid)
        check(std::isfinite(w.alpha) && std::isfinite(w.beta) && w.alpha >= 0.0 && w.beta >= 0.0, r, "weight_grid",
              "weights must be >= 0");
    check(c.shots >= 0, r, "shots", "must be >= 0");
    check(c.threads >= 0, r, "threads", "must be >= 0");
    if (c.scheme == Scheme::STA)
        check(std::abs(c.gamma - pi) < 1e-12, r, "gamma", "the STA scheme implements gamma = pi only");
}

const std::set<std::string> kKeys = {"command", "scheme",  "theta",      "phi",         "gamma",
                                     "phi0",    "duration", "steps",     "chirality",   "detect",
                                     "delta",   "alpha",   "beta",       "per_sample",  "trials",
                                     "offset_grid", "weight_grid", "shots", "threads", "seed", "out_dir"};

}  // namespace

void validate(const RunConfig& cfg) { validate_with(cfg, Reader{}); }

RunConfig parse_config(std::string_view yaml) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception& e) {
        throw ConfigError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, std::string("malformed config: ") + e.msg);
    }
    if (!root.IsMap()) throw ConfigError("", line_of(root), "config must be a mapping of keys to values");

    Reader r;
    for (const auto& kv : root) {
        const std::string key = kv.first.Scalar();
        if (!kKeys.count(key)) throw ConfigError(key, line_of(kv.first), "unknown key '" + key + "'");
        if (r.lines.count(key)) throw ConfigError(key, line_of(kv.first), "duplicate key '" + key + "'");
        r.lines[key] = line_of(kv.first);
    }
    if (!root["command"]) throw ConfigError("command", 0, "missing required key 'command'");

    const auto cmd = parse_command(r.scalar("command", root["command"]));
    if (!cmd) r.fail("command", "unknown command '" + root["command"].Scalar() + "'");
    Scheme scheme = Scheme::NHQC;
    if (root["scheme"]) {
        const auto s = parse_scheme(r.scalar("scheme", root["scheme"]));
        if (!s) r.fail("scheme", "unknown scheme '" + root["scheme"].Scalar() + "'");
        scheme = *s;
    }
    RunConfig c = default_run_config(*cmd, scheme);

    auto get = [&](const char* key) { return root[key]; };
    if (auto n = get("theta")) c.theta = r.angle("theta", n);
    if (auto n = get("phi")) c.phi = r.angle("phi", n);
    if (auto n = get("gamma")) c.gamma = r.angle("gamma", n);
    if (auto n = get("phi0")) c.phi0 = r.angle("phi0", n);
    if (auto n = get("duration")) c.duration = r.angle("duration", n);
    if (auto n = get("steps")) {
        const auto v = r.integer("steps", n);
        check(v >= 2 && v <= 100'000'000, r, "steps", "out of range");
        c.steps = static_cast<int>(v);
    }
    if (auto n = get("chirality")) c.chirality = r.scalar("chirality", n);
    if (auto n = get("detect")) {
        const auto v = r.integer("detect", n);
        check(v == 1 || v == 2, r, "detect", "must be 1 or 2");
        c.detect = static_cast<int>(v);
    }
    if (auto n = get("delta")) c.delta = r.real("delta", n);
    if (auto n = get("alpha")) c.alpha = r.real("alpha", n);
    if (auto n = get("beta")) c.beta = r.real("beta", n);
    if (auto n = get("per_sample")) c.per_sample = r.boolean("per_sample", n);
    if (auto n = get("trials")) {
        const auto v = r.integer("trials", n);
        check(v >= 1 && v <= 1'000'000, r, "trials", "out of range");
        c.trials = static_cast<int>(v);
    }
    if (auto n = get("offset_grid")) {
        check(n.IsSequence(), r, "offset_grid", "expected a list of offsets");
        c.offset_grid.clear();
        for (const auto& e : n) c.offset_grid.push_back(r.real("offset_grid", e));
    }
    if (auto n = get("weight_grid")) {
        check(n.IsSequence(), r, "weight_grid", "expected a list of [alpha, beta] pairs");
        c.weight_grid.clear();
        for (const auto& e : n) {
            check(e.IsSequence() && e.size() == 2, r, "weight_grid", "each entry must be [alpha, beta]");
            c.weight_grid.push_back({0.0, r.real("weight_grid", e[0]), r.real("weight_grid", e[1])});
        }
    }
    if (auto n = get("shots")) c.shots = r.integer("shots", n);
    if (auto n = get("threads")) {
        const auto v = r.integer("threads", n);
        check(v >= 0 && v <= 4096, r, "threads", "out of range");
        c.threads = static_cast<int>(v);
    }
    if (auto n = get("seed")) c.seed = r.unsigned_integer("seed", n);
    if (auto n = get("out_dir")) c.out_dir = r.scalar("out_dir", n);
    validate_with(c, r);
    return c;
}

std::string emit_config(const RunConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "command" << YAML::Value << std::string(to_string(c.command));
    out << YAML::Key << "scheme" << YAML::Value << std::string(to_string(c.scheme));
    out << YAML::Key << "theta" << YAML::Value << c.theta;
    out << YAML::Key << "phi" << YAML::Value << c.phi;
    out << YAML::Key << "gamma" << YAML::Value << c.gamma;
    out << YAML::Key << "phi0" << YAML::Value << c.phi0;
    out << YAML::Key << "duration" << YAML::Value << c.duration;
    out << YAML::Key << "steps" << YAML::Value << c.steps;
    out << YAML::Key << "chirality" << YAML::Value << c.chirality;
    out << YAML::Key << "detect" << YAML::Value << c.detect;
    out << YAML::Key << "delta" << YAML::Value << c.delta;
    out << YAML::Key << "alpha" << YAML::Value << c.alpha;
    out << YAML::Key << "beta" << YAML::Value << c.beta;
    out << YAML::Key << "per_sample" << YAML::Value << c.per_sample;
    out << YAML::Key << "trials" << YAML::Value << c.trials;
    out << YAML::Key << "offset_grid" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (double d : c.offset_grid) out << d;
    out << YAML::EndSeq;
    out << YAML::Key << "weight_grid" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& w : c.weight_grid) out << YAML::Flow << YAML::BeginSeq << w.alpha << w.beta << YAML::EndSeq;
    out << YAML::EndSeq;
    out << YAML::Key << "shots" << YAML::Value << c.shots;
    out << YAML::Key << "threads" << YAML::Value << c.threads;
    out << YAML::Key << "seed" << YAML::Value << c.seed;
    out << YAML::Key << "out_dir" << YAML::Value << YAML::DoubleQuoted << c.out_dir;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

SchemeConfig scheme_config(const RunConfig& c) {
    return {c.scheme, {c.theta, c.phi, c.gamma}, c.phi0, c.duration, c.steps};
}

NoiseSpec noise_spec(const RunConfig& c) { return {c.delta, c.alpha, c.beta, c.seed, 0, c.per_sample}; }

// ---------------------------------------------------------------------------

namespace {

int detect_level(const RunConfig& c) { return c.detect == 1 ? level3::k1 : level3::k2; }

std::vector<Chirality> chiralities(const RunConfig& c) {
    if (c.chirality == "L") return {Chirality::L};
    if (c.chirality == "R") return {Chirality::R};
    return {Chirality::L, Chirality::R};
}

class Outputs {
  public:
    explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw std::filesystem::filesystem_error("cannot create output directory", dir_, ec);
    }

    void write(const std::string& name, const std::string& content) {
        const auto path = dir_ / name;
        std::ofstream f(path, std::ios::binary);
        f << content;
        f.close();
        if (!f)
            throw std::filesystem::filesystem_error("cannot write output file", path,
                                                    std::make_error_code(std::errc::io_error));
        files_.push_back(path.string());
        names_.push_back(name);
    }

    const std::vector<std::string>& files() const { return files_; }
    const std::vector<std::string>& names() const { return names_; }

  private:
    std::filesystem::path dir_;
    std::vector<std::string> files_;
    std::vector<std::string> names_;
};

ordered_json populations(const DiscriminationResult& r) {
    return {{"p1", r.p1}, {"p2", r.p2}, {"p0", r.p0}};
}

ordered_json noise_json(const NoiseDescriptor& d) {
    return {{"delta", d.spec.delta},       {"alpha", d.spec.alpha},       {"beta", d.spec.beta},
            {"seed", d.spec.seed},         {"stream", d.spec.stream},     {"per_sample", d.spec.per_sample},
            {"realization", d.realization}, {"clipped", d.clipped}};
}

ordered_json matrix_json(const CMatrix& m) {
    ordered_json re = ordered_json::array();
    ordered_json im = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json rr = ordered_json::array();
        ordered_json ii = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"re", re}, {"im", im}};
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ordered_json manifest(const RunConfig& c, const std::vector<std::string>& files) {
    ordered_json grids;
    grids["offset_grid"] = c.offset_grid;
    ordered_json weights = ordered_json::array();
    for (const auto& w : c.weight_grid) weights.push_back({w.alpha, w.beta});
    grids["weight_grid"] = weights;

    ordered_json m;
    m["artifact"] = "holochiral";
    m["version"] = HOLOCHIRAL_VERSION;
    m["command"] = to_string(c.command);
    m["scheme"] = to_string(c.scheme);
    m["parameters"] = {{"theta", c.theta}, {"phi", c.phi},   {"gamma", c.gamma},
                       {"phi0", c.phi0},   {"duration", c.duration}};
    m["integrator"] = {{"method", "midpoint piecewise-constant exponential"}, {"steps", c.steps}};
    m["noise"] = {{"delta", c.delta},
                  {"alpha", c.alpha},
                  {"beta", c.beta},
                  {"per_sample", c.per_sample},
                  {"scale", kNoiseScale}};
    m["master_seed"] = c.seed;
    m["prng"] = kPrngName;
    m["trials"] = c.trials;
    m["grids"] = grids;
    m["config"] = emit_config(c);
    m["files"] = files;
    return m;
}

}  // namespace

std::vector<std::string> execute(const RunConfig& cfg, std::ostream& summary) {
    validate(cfg);
    Outputs out(cfg.out_dir);
    const SchemeConfig sc = scheme_config(cfg);
    const NoiseSpec noise = noise_spec(cfg);
    const std::string scheme_name(to_string(cfg.scheme));

    switch (cfg.command) {
        case Command::EmitPulses: {
            const NoisyField f = make_field(build_schedule(sc), noise);
            out.write("pulses.csv", schedule_csv(f.schedule));
            out.write("pulses.json", schedule_sidecar(f.schedule));
            summary << scheme_name << ": " << f.schedule.grid().steps() + 1 << " samples over T = " << fmt("%.9g", sc.duration)
                    << "\n";
            break;
        }
        case Command::Discriminate: {
            const NoisyField f = make_field(build_schedule(sc), noise);
            const auto l = run_discrimination(f, Chirality::L, sc.phi0);
            const auto r = run_discrimination(f, Chirality::R, sc.phi0);
            const double xi = contrast(l, r, detect_level(cfg));
            ordered_json j;
            j["scheme"] = scheme_name;
            j["detect"] = cfg.detect;
            j["L"] = populations(l);
            j["R"] = populations(r);
            j["xi"] = xi;
            j["noise"] = noise_json(f.noise);
            if (cfg.shots > 0) {
                const std::array<double, 3> pl{l.p1, l.p2, l.p0};
                const std::array<double, 3> pr{r.p1, r.p2, r.p0};
                const auto cl = shot_sampling(pl, cfg.shots, cfg.seed);
                const auto cr = shot_sampling(pr, cfg.shots, cfg.seed + 1);
                j["shots"] = {{"n", cfg.shots}, {"L", cl}, {"R", cr}};
            }
            out.write("discrimination.json", j.dump(2) + "\n");
            summary << scheme_name << "  L: P1=" << fmt("%.9f", l.p1) << " P2=" << fmt("%.9f", l.p2)
                    << " P0=" << fmt("%.9f", l.p0) << "\n";
            summary << scheme_name << "  R: P1=" << fmt("%.9f", r.p1) << " P2=" << fmt("%.9f", r.p2)
                    << " P0=" << fmt("%.9f", r.p0) << "\n";
            summary << "xi = " << fmt("%.9f", xi) << "\n";
            break;
        }
        case Command::Trace: {
            const NoisyField f = make_field(build_schedule(sc), noise);
            for (Chirality c : chiralities(cfg)) {
                const Trace tr = population_trace(f.schedule, c, sc.phi0);
                const std::string tag(to_string(c));
                out.write("trace_" + tag + ".csv", trace_csv(tr));
                out.write("amplitudes_" + tag + ".csv", amplitude_csv(tr));
                double pmin = 1.0;
                for (const auto& row : tr.rows) pmin = std::min(pmin, row.ptotal);
                summary << tag << ": P_total(T) = " << fmt("%.9f", tr.rows.back().ptotal)
                        << ", min P_total = " << fmt("%.6f", pmin) << "\n";
            }
            break;
        }
        case Command::SweepOffset:
        case Command::SweepRandom: {
            SweepOptions opt;
            opt.trials = cfg.trials;
            opt.master_seed = cfg.seed;
            opt.threads = cfg.threads;
            opt.detect = detect_level(cfg);
            opt.per_sample = cfg.per_sample;
            const bool offset = cfg.command == Command::SweepOffset;
            const SweepResult res = offset ? offset_sweep(sc, cfg.offset_grid, cfg.alpha, cfg.beta, opt)
                                           : random_noise_sweep(sc, cfg.weight_grid, opt);
            out.write(offset ? "sweep_offset.csv" : "sweep_random.csv", sweep_csv(res));
            for (const auto& p : summarize(res)) {
                if (offset)
                    summary << "delta=" << fmt("%+.3f", p.point.delta);
                else
                    summary << "alpha=" << fmt("%.3f", p.point.alpha) << " beta=" << fmt("%.3f", p.point.beta);
                summary << "  mean xi=" << fmt("%.6f", p.mean) << " +- " << fmt("%.6f", p.stderr_mean) << "\n";
            }
            break;
        }
        case Command::GateFidelity: {
            ordered_json j;
            j["scheme"] = scheme_name;
            j["theta"] = cfg.theta;
            j["phi"] = cfg.phi;
            j["gamma"] = cfg.gamma;
            for (Chirality c : chiralities(cfg)) {
                const double fid = gate_fidelity(sc, c, noise);
                j["fidelity"][std::string(to_string(c))] = fid;
                summary << to_string(c) << ": gate fidelity = " << fmt("%.12f", fid) << "\n";
            }
            out.write("gate_fidelity.json", j.dump(2) + "\n");
            break;
        }
        case Command::Qpt: {
            ordered_json j;
            j["scheme"] = scheme_name;
            j["basis"] = {"I", "X", "Y", "Z"};
            for (Chirality c : chiralities(cfg)) {
                const QPTResult q = qpt(sc, c, noise);
                const std::string tag(to_string(c));
                j[tag] = {{"process_fidelity", q.process_fidelity}, {"chi", matrix_json(q.chi)}};
                summary << tag << ": process fidelity = " << fmt("%.12f", q.process_fidelity) << "\n";
            }
            out.write("qpt.json", j.dump(2) + "\n");
            break;
        }
    }
    std::vector<std::string> names = out.names();
    out.write("manifest.json", manifest(cfg, names).dump(2) + "\n");
    return out.files();
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const NumericalFailure*>(&e) || dynamic_cast<const ResolutionError*>(&e) ||
        dynamic_cast<const ConditionViolation*>(&e) || dynamic_cast<const SingularPath*>(&e))
        return 3;
    return 1;
}

std::string error_record(const std::exception& e) {
    ordered_json j;
    j["status"] = "error";
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
        j["kind"] = "config";
        j["key"] = ce->key();
        j["line"] = ce->line();
    } else if (exit_code(e) == 3) {
        j["kind"] = "numerical";
    } else if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) {
        j["kind"] = "io";
    } else {
        j["kind"] = "internal";
    }
    j["exit_code"] = exit_code(e);
    j["message"] = e.what();
    return j.dump();
}

}  // namespace holochiral
