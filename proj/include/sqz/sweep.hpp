#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqz/channels.hpp"

// CSV-producing drivers behind the CLI subcommands. All output is
// deterministic: fixed 12-significant-digit formatting, '\n' endings,
// rows emitted in grid order regardless of the worker count.
namespace sqz {

/// Inclusive grid "min:max:steps" (steps = number of intervals) or a single
/// scalar "x". min == max collapses to one point.
struct Grid {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    static Grid parse(const std::string& text);
    std::vector<double> values() const;
};

/// 12-significant-digit float cell.
std::string csv_num(double v);

struct SweepConfig {
    std::vector<ChannelKind> channels;
    int n = 2;
    Grid theta0_pi;          // twist angle in units of pi, within [0, 2]
    Grid p;                  // decoherence strength grid
    int threads = 0;         // 0 = hardware concurrency
    bool oracle_check = false;
    double tol = 1e-9;       // oracle cross-check tolerance
    bool extended_dpc = false;
};

struct CriticalConfig {
    std::vector<ChannelKind> channels;
    int n = 2;
    Grid theta0_pi;
    int threads = 0;
};

struct VerifyConfig {
    std::vector<ChannelKind> channels;  // default: all three
    int n_max = 8;
    Grid theta0_pi{0.0, 2.0, 16};       // 17 points spanning [0, 2pi]
    Grid p{0.0, 0.999, 10};             // 11 points spanning [0, 0.999]
    double tol = 1e-9;
    int threads = 0;
};

/// Header: channel,n,theta0_pi,p,xi1_sq,xi2_sq,xi3_sq,zeta1_sq,zeta2_sq,
/// zeta3_sq,concurrence_rescaled,min_branch. Returns the number of rows that
/// failed the oracle cross-check (0 when the check is off).
int run_sweep(const SweepConfig& cfg, std::ostream& out);

/// Header: channel,n,theta0_pi,pc_concurrence,pc_zeta2,pc_zeta3,
/// zeta1_sq_initial,status_concurrence,status_zeta2,status_zeta3.
void run_critical(const CriticalConfig& cfg, std::ostream& out);

/// One row per grid point with per-quantity deviations and a pass flag.
/// Returns the number of failing points.
int run_verify(const VerifyConfig& cfg, std::ostream& out);

}  // namespace sqz
