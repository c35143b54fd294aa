#include "hidaprop/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hidaprop/density.hpp"
#include "hidaprop/grid.hpp"
#include "hidaprop/mehler.hpp"
#include "hidaprop/noise_kernel.hpp"
#include "hidaprop/tdse.hpp"
#include "hidaprop/wavepacket.hpp"

namespace hidaprop::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (...) {
        throw ConfigError("config: bad number for '" + key + "': " + value);
    }
    if (pos != value.size())
        throw ConfigError("config: trailing characters for '" + key + "': " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
        throw ConfigError("config: expected integer for '" + key + "': " + value);
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config: expected boolean for '" + key + "': " + value);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// inserts a suffix before the file extension: base.csv -> base.tag.csv
std::string derived_path(const std::string& out, const std::string& tag) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + "." + tag;
    return out.substr(0, dot) + "." + tag + out.substr(dot);
}

int physics_exit(const Error& e, std::ostream& diag) {
    diag << "error: " << e.what() << "\n";
    if (dynamic_cast<const ImaginaryFrequency*>(&e) != nullptr ||
        dynamic_cast<const ResonanceViolation*>(&e) != nullptr)
        return 2;
    if (dynamic_cast<const Caustic*>(&e) != nullptr ||
        dynamic_cast<const SingularOperator*>(&e) != nullptr)
        return 3;
    throw e;
}

propagator::Prefactor convention_of(const RunConfig& c) {
    return c.verbatim_prefactor ? propagator::Prefactor::verbatim
                                : propagator::Prefactor::corrected;
}

double ground_sigma(double m, double omega, double hbar) {
    return std::sqrt(hbar / (2.0 * m * omega));
}

} // namespace

core::SystemParams RunConfig::system_params() const {
    try {
        return core::SystemParams(m, omega, omega_q, lambda_c, c_coupling, hbar);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("config: empty value for '" + key + "'");

        if (key == "m") cfg.m = parse_double(key, value);
        else if (key == "omega") cfg.omega = parse_double(key, value);
        else if (key == "omega_q") cfg.omega_q = parse_double(key, value);
        else if (key == "lambda_c") cfg.lambda_c = parse_double(key, value);
        else if (key == "c_coupling") cfg.c_coupling = parse_double(key, value);
        else if (key == "hbar") cfg.hbar = parse_double(key, value);
        else if (key == "times") {
            cfg.times.clear();
            for (const auto& part : split(value, ','))
                cfg.times.push_back(parse_double(key, part));
        } else if (key == "n_list") {
            cfg.n_list.clear();
            for (const auto& part : split(value, ','))
                cfg.n_list.push_back(parse_int(key, part));
        } else if (key == "wn_omega_list") {
            cfg.wn_omega_list.clear();
            for (const auto& part : split(value, ','))
                cfg.wn_omega_list.push_back(parse_double(key, part));
        } else if (key == "grid_n") cfg.grid_n = parse_int(key, value);
        else if (key == "grid_extent") cfg.grid_extent = parse_double(key, value);
        else if (key == "center1") cfg.center1 = parse_double(key, value);
        else if (key == "center2") cfg.center2 = parse_double(key, value);
        else if (key == "sigma1") cfg.sigma1 = parse_double(key, value);
        else if (key == "sigma2") cfg.sigma2 = parse_double(key, value);
        else if (key == "tdse_steps") cfg.tdse_steps = parse_int(key, value);
        else if (key == "out") cfg.out_path = value;
        else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::csv;
            else if (value == "json") cfg.format = OutputFormat::json;
            else throw ConfigError("config: format must be csv or json");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_double(key, value));
        } else if (key == "verbatim_prefactor") {
            cfg.verbatim_prefactor = parse_bool(key, value);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string format_table(const Table& table, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << format_value(row[c]);
            out << "\n";
        }
        return out.str();
    }
    nlohmann::ordered_json j;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        auto& col = j[table.columns[c]];
        col = nlohmann::json::array();
        for (const auto& row : table.rows) col.push_back(row[c]);
    }
    return j.dump(2) + "\n";
}

void write_table(const Table& table, OutputFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << format_table(table, format);
}

namespace {

void require_out(const RunConfig& c) {
    if (c.out_path.empty()) throw ConfigError("config: 'out' path is required");
}

void require_times(const RunConfig& c) {
    if (c.times.empty()) throw ConfigError("config: 'times' must be nonempty");
    for (double t : c.times)
        if (!(t > 0.0)) throw ConfigError("config: times must be positive");
}

void require_ascending_n(const RunConfig& c) {
    if (c.n_list.empty()) throw ConfigError("config: 'n_list' must be nonempty");
    for (std::size_t i = 0; i < c.n_list.size(); ++i) {
        if (c.n_list[i] < 2) throw ConfigError("config: n_list entries must be >= 2");
        if (i > 0 && c.n_list[i] <= c.n_list[i - 1])
            throw ConfigError("config: n_list must be strictly ascending");
    }
}

} // namespace

int cmd_freqs(const RunConfig& config, std::ostream& diag) {
    require_out(config);
    const core::SystemParams p = config.system_params();

    core::ModeFrequencies f{};
    try {
        f = core::mode_frequencies(p);
    } catch (const Error& e) {
        return physics_exit(e, diag);
    }

    Table table;
    table.columns = {"m", "omega", "omega_q", "lambda_c", "c_coupling",
                     "omega1", "omega2", "phi2", "phi", "valid"};
    table.rows.push_back({p.m, p.omega, p.omega_q, p.lambda_c, p.c_coupling,
                          f.omega1, f.omega2, f.phi2, f.phi, 1.0});
    write_table(table, config.format, config.out_path);
    return 0;
}

int cmd_verify_wn(const RunConfig& config, std::ostream& diag) {
    (void)diag;
    require_out(config);
    require_times(config);
    require_ascending_n(config);
    std::vector<double> omegas = config.wn_omega_list;
    if (omegas.empty()) omegas = {config.omega};
    for (double w : omegas)
        if (!(w >= 0.0)) throw ConfigError("config: wn_omega_list must be >= 0");

    Table table;
    table.columns = {"omega", "t", "n", "det_num", "det_exact", "det_err",
                     "bil_num", "bil_exact", "bil_err", "caustic"};
    for (double w : omegas)
        for (double t : config.times)
            for (int n : config.n_list) {
                const double det_exact = std::cos(w * t);
                const double bil_exact =
                    w == 0.0 ? 1.0 : std::tan(w * t) / (w * t);
                const auto kernel = whitenoise::noise_kernel(w, t, n);
                double det_num, bil_num, caustic = 0.0;
                try {
                    const auto df = whitenoise::determinant_and_form(kernel);
                    det_num = df.determinant;
                    bil_num = df.bilinear;
                } catch (const SingularOperator&) {
                    det_num = whitenoise::fredholm_determinant(kernel);
                    bil_num = std::nan("");
                    caustic = 1.0;
                }
                table.rows.push_back({w, t, double(n), det_num, det_exact,
                                      det_num - det_exact, bil_num, bil_exact,
                                      bil_num - bil_exact, caustic});
            }
    write_table(table, config.format, config.out_path);
    return 0;
}

int cmd_propagate(const RunConfig& config, std::ostream& diag) {
    require_out(config);
    require_times(config);
    if (config.grid_n < 4 || (config.grid_n & (config.grid_n - 1)) != 0)
        throw ConfigError("config: grid_n must be a power of two >= 4");
    if (!(config.grid_extent > 0.0))
        throw ConfigError("config: grid_extent must be positive");
    if (config.c_coupling != 0.0)
        throw ConfigError("config: propagate requires c_coupling = 0");
    const core::SystemParams p = config.system_params();

    const double s1 = config.sigma1 > 0.0 ? config.sigma1
                                          : ground_sigma(p.m, p.omega, p.hbar);
    const double s2 = config.sigma2 > 0.0 ? config.sigma2
                                          : ground_sigma(p.m, p.omega, p.hbar);
    const GridAxis ax = centered_axis(config.grid_n, config.grid_extent);
    GridState psi0;
    try {
        psi0 = gaussian_state({ax, ax}, {config.center1, config.center2},
                              {s1, s2}, {0.0, 0.0}, Frame::lab, p.hbar);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    Table summary;
    summary.columns = {"t", "norm_initial", "norm_kernel", "norm_tdse",
                       "overlap_re", "overlap_im", "l2_err"};
    struct StateDump {
        std::string tag;
        GridState kernel;
        GridState tdse;
    };
    std::vector<StateDump> dumps;

    try {
        for (std::size_t ti = 0; ti < config.times.size(); ++ti) {
            const double t = config.times[ti];
            const GridState by_kernel =
                propagator::propagate_wavepacket(p, psi0, t, convention_of(config));
            int steps = config.tdse_steps;
            if (steps <= 0) steps = std::max(800, int(std::ceil(2000.0 * t)));
            const GridState by_tdse = tdse::split_operator_evolve(p, psi0, t, steps);

            const std::complex<double> overlap =
                (by_tdse.values.adjoint() * by_kernel.values)(0) * psi0.cell_volume();
            summary.rows.push_back({t, psi0.norm(), by_kernel.norm(), by_tdse.norm(),
                                    overlap.real(), overlap.imag(),
                                    l2_distance(by_kernel, by_tdse)});
            dumps.push_back({"t" + std::to_string(ti), by_kernel, by_tdse});
        }
    } catch (const Error& e) {
        return physics_exit(e, diag);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    // all computation succeeded; emit everything
    {
        Table t0;
        t0.columns = {"i", "j", "x1", "x2", "re", "im"};
        for (int i = 0; i < ax.n; ++i)
            for (int j = 0; j < ax.n; ++j) {
                const auto v = psi0.values(psi0.index(i, j));
                t0.rows.push_back({double(i), double(j), ax.coord(i), ax.coord(j),
                                   v.real(), v.imag()});
            }
        write_table(t0, config.format, derived_path(config.out_path, "initial"));
    }
    for (const auto& d : dumps) {
        Table st;
        st.columns = {"i", "j", "x1", "x2", "re_kernel", "im_kernel",
                      "re_tdse", "im_tdse"};
        for (int i = 0; i < ax.n; ++i)
            for (int j = 0; j < ax.n; ++j) {
                const auto a = d.kernel.values(d.kernel.index(i, j));
                const auto b = d.tdse.values(d.tdse.index(i, j));
                st.rows.push_back({double(i), double(j), ax.coord(i), ax.coord(j),
                                   a.real(), a.imag(), b.real(), b.imag()});
            }
        write_table(st, config.format, derived_path(config.out_path, d.tag));
    }
    write_table(summary, config.format, config.out_path);
    return 0;
}

int cmd_evolve_density(const RunConfig& config, std::ostream& diag) {
    require_out(config);
    require_times(config);
    if (config.grid_n < 4) throw ConfigError("config: grid_n must be >= 4");
    if (config.grid_n > 48)
        throw ConfigError("config: density grids above 48 points per axis "
                          "produce impractically large output files");
    if (!(config.grid_extent > 0.0))
        throw ConfigError("config: grid_extent must be positive");
    if (config.c_coupling != 0.0)
        throw ConfigError("config: evolve-density requires c_coupling = 0 "
                          "(the traced form)");
    const core::SystemParams p = config.system_params();

    core::ModeFrequencies f{};
    try {
        f = core::mode_frequencies(p);
    } catch (const Error& e) {
        return physics_exit(e, diag);
    }

    const GridAxis ax = centered_axis(config.grid_n, config.grid_extent);
    master::GaussianState g;
    g.center1 = config.center1;
    g.center2 = config.center2;
    g.sigma1 = config.sigma1 > 0.0 ? config.sigma1 : ground_sigma(p.m, f.omega1, p.hbar);
    g.sigma2 = config.sigma2 > 0.0 ? config.sigma2 : ground_sigma(p.m, f.phi2, p.hbar);
    const master::DensityGrid rho0 = master::gaussian_density(p, g, ax, ax);

    Table summary;
    summary.columns = {"t", "trace_re", "trace_im", "purity", "herm_residual"};
    std::vector<master::DensityGrid> states;

    try {
        for (double t : config.times) {
            master::DensityGrid rho =
                master::evolve_density(p, rho0, t, convention_of(config));
            const auto tr = rho.trace();
            summary.rows.push_back({t, tr.real(), tr.imag(), master::purity(rho),
                                    rho.hermiticity_residual()});
            states.push_back(std::move(rho));
        }
    } catch (const Error& e) {
        return physics_exit(e, diag);
    }

    for (std::size_t ti = 0; ti < states.size(); ++ti) {
        const auto& rho = states[ti];
        Table grid;
        grid.columns = {"u1", "u2", "u1p", "u2p", "re", "im"};
        for (int a = 0; a < ax.n; ++a)
            for (int b = 0; b < ax.n; ++b)
                for (int c = 0; c < ax.n; ++c)
                    for (int d = 0; d < ax.n; ++d) {
                        const auto v = rho.values(a * ax.n + b, c * ax.n + d);
                        grid.rows.push_back({ax.coord(a), ax.coord(b), ax.coord(c),
                                             ax.coord(d), v.real(), v.imag()});
                    }
        write_table(grid, config.format,
                    derived_path(config.out_path, "t" + std::to_string(ti)));
    }
    write_table(summary, config.format, config.out_path);
    return 0;
}

int run_command(const RunConfig& config, std::ostream& diag) {
    if (config.command == "freqs") return cmd_freqs(config, diag);
    if (config.command == "verify-wn") return cmd_verify_wn(config, diag);
    if (config.command == "propagate") return cmd_propagate(config, diag);
    if (config.command == "evolve-density") return cmd_evolve_density(config, diag);
    throw ConfigError("unknown command '" + config.command + "'");
}

} // namespace hidaprop::cli
