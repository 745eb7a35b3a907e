#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "holochiral/cli.hpp"
#include "holochiral/errors.hpp"

using namespace holochiral;

int main(int argc, char** argv) {
    CLI::App app{"Holonomic discrimination of chiral molecules: pulse synthesis, simulation and sweeps"};
    std::string command;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> steps;
    std::optional<std::string> scheme;
    bool print_config = false;

    app.add_option("command", command,
                   "emit-pulses | discriminate | trace | sweep-offset | sweep-random | gate-fidelity | qpt");
    app.add_option("--config", config_path, "YAML run configuration");
    app.add_option("--seed", seed, "master seed (overrides config)");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--steps", steps, "integrator steps per cyclic evolution (overrides config)");
    app.add_option("--scheme", scheme, "NHQC | NHQC+ | STA (overrides config)");
    app.add_flag("--print-config", print_config, "print the resolved canonical config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::string yaml;
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("--config", 0, "cannot read config file '" + config_path + "'");
            std::stringstream ss;
            ss << f.rdbuf();
            yaml = ss.str();
        }
        // The positional command stands in for a missing `command` key.
        if (!command.empty() && yaml.find("command:") == std::string::npos) yaml += "\ncommand: " + command + "\n";
        RunConfig cfg = parse_config(yaml);
        if (!command.empty()) {
            const auto cmd = parse_command(command);
            if (!cmd) throw ConfigError("command", 0, "unknown command '" + command + "'");
            cfg.command = *cmd;
        }
        if (scheme) {
            const auto s = parse_scheme(*scheme);
            if (!s) throw ConfigError("--scheme", 0, "unknown scheme '" + *scheme + "'");
            cfg.scheme = *s;
        }
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (steps) cfg.steps = *steps;
        validate(cfg);
        if (print_config) {
            std::cout << emit_config(cfg);
            return 0;
        }
        execute(cfg, std::cout);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << error_record(e) << "\n";
        return exit_code(e);
    }
}
