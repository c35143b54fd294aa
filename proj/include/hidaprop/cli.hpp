// Batch front end: flat key=value run configuration, command dispatch,
// CSV/JSON emission.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hidaprop/params.hpp"

namespace hidaprop::cli {

// Raised on malformed or inconsistent configuration (exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command;

    // physics
    double m = 1.0;
    double omega = 1.0;
    double omega_q = 1.0;
    double lambda_c = 0.0;
    double c_coupling = 0.0;
    double hbar = 1.0;

    // sweeps
    std::vector<double> times;
    std::vector<int> n_list;
    std::vector<double> wn_omega_list;

    // grids
    int grid_n = 64;
    double grid_extent = 8.0;

    // initial Gaussian (defaults resolved per command)
    double center1 = 0.0;
    double center2 = 0.0;
    double sigma1 = 0.0;  // 0 means "ground-state width"
    double sigma2 = 0.0;

    int tdse_steps = 0;  // 0 means auto

    std::string out_path;
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 0;
    bool verbatim_prefactor = false;

    core::SystemParams system_params() const;
};

// Parses `key = value` lines; '#' starts a comment; unknown keys are errors.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// A rectangular numeric table with fixed column order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// 17 significant digits, '.' decimal separator, byte-stable.
std::string format_table(const Table& table, OutputFormat format);
void write_table(const Table& table, OutputFormat format, const std::string& path);

// Commands. Each validates the configuration fully before computing and
// returns a process exit code: 0 ok, 1 config error, 2 invalid physics,
// 3 caustic. Diagnostics go to the `diag` stream (stderr in the binary).
int cmd_freqs(const RunConfig& config, std::ostream& diag);
int cmd_verify_wn(const RunConfig& config, std::ostream& diag);
int cmd_propagate(const RunConfig& config, std::ostream& diag);
int cmd_evolve_density(const RunConfig& config, std::ostream& diag);

// Dispatch by config.command.
int run_command(const RunConfig& config, std::ostream& diag);

} // namespace hidaprop::cli
