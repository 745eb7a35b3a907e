#pragma once

// Run configuration, strict YAML parsing and command execution for chiralsim.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holochiral/experiments.hpp"

namespace holochiral {

enum class Command { EmitPulses, Discriminate, Trace, SweepOffset, SweepRandom, GateFidelity, Qpt };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

struct RunConfig {
    Command command = Command::Discriminate;
    Scheme scheme = Scheme::NHQC;
    double theta = 0.0;
    double phi = 0.0;
    double gamma = 0.0;
    double phi0 = 0.0;
    double duration = 0.0;
    int steps = kDefaultSteps;
    // "L", "R" or "both"; trace, gate-fidelity and qpt honour it.
    std::string chirality = "both";
    int detect = 2;  // level |1> or |2>
    double delta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    bool per_sample = true;
    int trials = 20;
    std::vector<double> offset_grid;
    std::vector<SweepPoint> weight_grid;  // (alpha, beta) pairs for sweep-random
    std::int64_t shots = 0;               // discriminate: finite-shot readout when > 0
    int threads = 0;
    std::uint64_t seed = 42;
    std::string out_dir = ".";

    bool operator==(const RunConfig&) const;
};

RunConfig default_run_config(Command command, Scheme scheme);

// Radians, or a multiple of pi written like "pi", "-pi/2", "3pi/4", "0.5*pi".
double parse_angle(std::string_view text);

// Throws ConfigError with the offending key and 1-based line.
RunConfig parse_config(std::string_view yaml);

// Canonical YAML with every field present; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& cfg);

void validate(const RunConfig& cfg);

SchemeConfig scheme_config(const RunConfig& cfg);
NoiseSpec noise_spec(const RunConfig& cfg);

// Runs the command, writes its files and manifest.json into out_dir and a
// short summary to `summary`. Returns the list of files written.
std::vector<std::string> execute(const RunConfig& cfg, std::ostream& summary);

// Machine-readable error record for stderr, and the matching exit status.
std::string error_record(const std::exception& e);
int exit_code(const std::exception& e);

}  // namespace holochiral
