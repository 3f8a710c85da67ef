#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "sqz/sweep.hpp"

namespace {

std::vector<sqz::ChannelKind> parse_channels(const std::vector<std::string>& tokens) {
    std::vector<sqz::ChannelKind> kinds;
    kinds.reserve(tokens.size());
    for (const auto& t : tokens) kinds.push_back(sqz::channel_from_token(t));
    return kinds;
}

int with_output(const std::string& path, const std::function<int(std::ostream&)>& body) {
    if (path == "-") return body(std::cout);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 1;
    }
    const int rc = body(file);
    file.flush();
    if (!file.good()) {
        std::cerr << "error: writing '" << path << "' failed\n";
        return 1;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin squeezing and pairwise entanglement of a one-axis-twisted ensemble "
                 "under local decoherence: parameter sweeps, sudden-death critical strengths "
                 "and brute-force verification, all as CSV."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    std::vector<std::string> channels;
    int n = 2;
    std::string theta0 = "0";
    std::string p_grid = "0:1:100";
    std::string output = "-";
    int threads = 0;
    bool oracle_check = false;
    double tol = 1e-9;
    bool extended_dpc = false;
    int n_max = 8;

    auto* sweep = app.add_subcommand(
        "sweep", "Squeezing parameters and rescaled concurrence versus decoherence strength");
    sweep->add_option("--channel", channels, "Channel token(s): adc, pdc, dpc")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember({"adc", "pdc", "dpc"}));
    sweep->add_option("--n", n, "Number of spins (>= 2)")->required();
    sweep->add_option("--theta0", theta0,
                      "Twist angle in units of pi: value or min:max:steps, within [0, 2]")
        ->required();
    sweep->add_option("--p", p_grid, "Decoherence strength grid: value or min:max:steps")
        ->required();
    sweep->add_option("--output,-o", output, "Output CSV path ('-' = stdout)");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep->add_flag("--oracle", oracle_check,
                    "Cross-check every row against the brute-force oracle (n <= 8)");
    sweep->add_option("--tol", tol, "Oracle cross-check tolerance");
    sweep->add_flag("--allow-extended-dpc", extended_dpc,
                    "Admit DPC strengths in (1, 4/3]");

    auto* critical = app.add_subcommand(
        "critical", "Analytic sudden-death strengths p_c versus the initial twist angle");
    critical->add_option("--channel", channels, "Channel token(s): adc, pdc, dpc")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember({"adc", "pdc", "dpc"}));
    critical->add_option("--n", n, "Number of spins (>= 2)")->required();
    critical->add_option("--theta0", theta0,
                         "Twist angle grid in units of pi, within [0, 2]")
        ->required();
    critical->add_option("--output,-o", output, "Output CSV path ('-' = stdout)");
    critical->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* verify = app.add_subcommand(
        "verify", "Compare every closed form against the brute-force oracle over a grid");
    verify->add_option("--n-max", n_max, "Largest spin count to verify (2..8)");
    verify->add_option("--theta0", theta0, "Twist angle grid in units of pi")
        ->default_val("0:2:16");
    verify->add_option("--p", p_grid, "Decoherence strength grid")->default_val("0:0.999:10");
    verify->add_option("--tol", tol, "Per-quantity deviation tolerance");
    verify->add_option("--channel", channels, "Channel token(s); default: all three")
        ->delimiter(',')
        ->check(CLI::IsMember({"adc", "pdc", "dpc"}));
    verify->add_option("--output,-o", output, "Deviation CSV path ('-' = stdout)");
    verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed()) {
            sqz::SweepConfig cfg;
            cfg.channels = parse_channels(channels);
            cfg.n = n;
            cfg.theta0_pi = sqz::Grid::parse(theta0);
            cfg.p = sqz::Grid::parse(p_grid);
            cfg.threads = threads;
            cfg.oracle_check = oracle_check;
            cfg.tol = tol;
            cfg.extended_dpc = extended_dpc;
            return with_output(output, [&](std::ostream& out) {
                const int failures = sqz::run_sweep(cfg, out);
                if (failures > 0) {
                    std::cerr << failures << " row(s) failed the oracle cross-check at tol="
                              << tol << "\n";
                    return 2;
                }
                return 0;
            });
        }
        if (critical->parsed()) {
            sqz::CriticalConfig cfg;
            cfg.channels = parse_channels(channels);
            cfg.n = n;
            cfg.theta0_pi = sqz::Grid::parse(theta0);
            cfg.threads = threads;
            return with_output(output, [&](std::ostream& out) {
                sqz::run_critical(cfg, out);
                return 0;
            });
        }
        sqz::VerifyConfig cfg;
        cfg.channels = parse_channels(channels);
        cfg.n_max = n_max;
        cfg.theta0_pi = sqz::Grid::parse(theta0);
        cfg.p = sqz::Grid::parse(p_grid);
        cfg.tol = tol;
        cfg.threads = threads;
        return with_output(output, [&](std::ostream& out) {
            const int failures = sqz::run_verify(cfg, out);
            if (failures > 0) {
                std::cerr << failures << " grid point(s) exceeded tol=" << cfg.tol << "\n";
                return 2;
            }
            std::cerr << "all grid points within tol=" << cfg.tol << "\n";
            return 0;
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
