// hidaprop command-line front end:
//   hidaprop <command> --config <path> [--out <path>]

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hidaprop/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"White-noise propagator toolkit for coupled oscillators in a bath"};
    app.require_subcommand(0, 0);

    std::string command;
    std::string config_path;
    std::string out_override;
    app.add_option("command", command,
                   "freqs | verify-wn | propagate | evolve-density")
        ->required();
    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_override, "override the configured output path");

    CLI11_PARSE(app, argc, argv);

    try {
        hidaprop::cli::RunConfig config = hidaprop::cli::parse_config_file(config_path);
        config.command = command;
        if (!out_override.empty()) config.out_path = out_override;
        return hidaprop::cli::run_command(config, std::cerr);
    } catch (const hidaprop::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
