#include "sqz/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sqz/evolution.hpp"
#include "sqz/oracle.hpp"

namespace sqz {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..total-1) across workers; any worker exception is rethrown after
// join. Each index is independent, so the caller's output stays in grid order.
void parallel_for(int total, int threads, const std::function<void(int)>& fn) {
    threads = std::min(resolve_threads(threads), total);
    if (threads <= 1) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= total) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(total);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string branch_token(MinBranch b) {
    return b == MinBranch::XI1 ? "xi1" : "varsigma";
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? csv_num(*v) : std::string();
}

void validate_channels(const std::vector<ChannelKind>& channels) {
    if (channels.empty()) throw std::invalid_argument("at least one channel is required");
}

}  // namespace

Grid Grid::parse(const std::string& text) {
    Grid g;
    const auto first = text.find(':');
    try {
        if (first == std::string::npos) {
            g.min = g.max = std::stod(text);
            g.steps = 1;
            return g;
        }
        const auto second = text.find(':', first + 1);
        if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
            throw std::invalid_argument("bad grid");
        }
        g.min = std::stod(text.substr(0, first));
        g.max = std::stod(text.substr(first + 1, second - first - 1));
        g.steps = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("grid '" + text + "' is not 'value' or 'min:max:steps'");
    }
    if (g.steps < 1) throw std::invalid_argument("grid '" + text + "': steps must be >= 1");
    if (g.max < g.min) throw std::invalid_argument("grid '" + text + "': max below min");
    return g;
}

std::vector<double> Grid::values() const {
    if (min == max) return {min};
    std::vector<double> vals;
    vals.reserve(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        vals.push_back(min * (1.0 - t) + max * t);
    }
    return vals;
}

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_sweep(const SweepConfig& cfg, std::ostream& out) {
    validate_channels(cfg.channels);
    if (cfg.n < 2) throw std::invalid_argument("sweep: n must be >= 2");
    if (cfg.theta0_pi.min < 0.0 || cfg.theta0_pi.max > 2.0) {
        throw std::invalid_argument("sweep: theta0 grid must lie within [0, 2] (units of pi)");
    }
    if (cfg.oracle_check && cfg.n > oracle::kMaxDensityQubits) {
        throw std::invalid_argument("sweep: oracle cross-check needs n <= " +
                                    std::to_string(oracle::kMaxDensityQubits));
    }

    const auto thetas = cfg.theta0_pi.values();
    const auto ps = cfg.p.values();
    for (double p : ps) ChannelSpec(cfg.channels.front(), p, cfg.extended_dpc);  // domain check

    struct Row {
        std::string text;
        bool oracle_ok = true;
    };
    const int total = static_cast<int>(cfg.channels.size() * thetas.size() * ps.size());
    std::vector<Row> rows(total);

    std::optional<oracle::CollectiveOps> ops;
    if (cfg.oracle_check) ops.emplace(cfg.n);

    parallel_for(total, cfg.threads, [&](int idx) {
        const int pi = idx % static_cast<int>(ps.size());
        const int ti = (idx / static_cast<int>(ps.size())) % static_cast<int>(thetas.size());
        const int ci = idx / static_cast<int>(ps.size() * thetas.size());
        const ChannelKind kind = cfg.channels[ci];
        const double theta_pi = thetas[ti];
        const double p = ps[pi];

        const EnsembleSpec spec(cfg.n, theta_pi * std::numbers::pi);
        const InitialScalars init(spec);
        const SqueezingReport r = report_at(kind, init, p, cfg.extended_dpc);

        std::ostringstream line;
        line << channel_token(kind) << ',' << cfg.n << ',' << csv_num(theta_pi) << ','
             << csv_num(p) << ',' << csv_num(r.xi1_sq) << ',' << opt_cell(r.xi2_sq) << ','
             << csv_num(r.xi3_sq) << ',' << csv_num(r.zeta1_sq) << ',' << opt_cell(r.zeta2_sq)
             << ',' << csv_num(r.zeta3_sq) << ',' << csv_num(r.cr) << ','
             << branch_token(r.min_branch);
        rows[idx].text = line.str();

        if (cfg.oracle_check) {
            const auto rep = oracle::verify_point(kind, p, cfg.n, spec.theta0, cfg.tol, *ops);
            rows[idx].oracle_ok = rep.pass;
        }
    });

    out << "channel,n,theta0_pi,p,xi1_sq,xi2_sq,xi3_sq,zeta1_sq,zeta2_sq,zeta3_sq,"
           "concurrence_rescaled,min_branch\n";
    int failures = 0;
    for (const Row& row : rows) {
        out << row.text << '\n';
        if (!row.oracle_ok) ++failures;
    }
    return failures;
}

void run_critical(const CriticalConfig& cfg, std::ostream& out) {
    validate_channels(cfg.channels);
    if (cfg.n < 2) throw std::invalid_argument("critical: n must be >= 2");
    if (cfg.theta0_pi.min < 0.0 || cfg.theta0_pi.max > 2.0) {
        throw std::invalid_argument("critical: theta0 grid must lie within [0, 2] (units of pi)");
    }

    const auto thetas = cfg.theta0_pi.values();
    const int total = static_cast<int>(cfg.channels.size() * thetas.size());
    std::vector<std::string> rows(total);

    parallel_for(total, cfg.threads, [&](int idx) {
        const int ti = idx % static_cast<int>(thetas.size());
        const int ci = idx / static_cast<int>(thetas.size());
        const ChannelKind kind = cfg.channels[ci];
        const double theta_pi = thetas[ti];

        const EnsembleSpec spec(cfg.n, theta_pi * std::numbers::pi);
        const InitialScalars init(spec);
        const CriticalPoint conc = critical_strength(kind, DeathQuantity::CONCURRENCE, spec);
        const CriticalPoint z2 = critical_strength(kind, DeathQuantity::ZETA2, spec);
        const CriticalPoint z3 = critical_strength(kind, DeathQuantity::ZETA3, spec);
        const double zeta1 = std::max(0.0, init.cr0);

        std::ostringstream line;
        line << channel_token(kind) << ',' << cfg.n << ',' << csv_num(theta_pi) << ','
             << opt_cell(conc.p_c) << ',' << opt_cell(z2.p_c) << ',' << opt_cell(z3.p_c) << ','
             << csv_num(zeta1) << ',' << death_status_token(conc.status) << ','
             << death_status_token(z2.status) << ',' << death_status_token(z3.status);
        rows[idx] = line.str();
    });

    out << "channel,n,theta0_pi,pc_concurrence,pc_zeta2,pc_zeta3,zeta1_sq_initial,"
           "status_concurrence,status_zeta2,status_zeta3\n";
    for (const auto& row : rows) out << row << '\n';
}

int run_verify(const VerifyConfig& cfg, std::ostream& out) {
    std::vector<ChannelKind> channels = cfg.channels;
    if (channels.empty()) channels = {ChannelKind::ADC, ChannelKind::PDC, ChannelKind::DPC};
    if (cfg.n_max < 2 || cfg.n_max > oracle::kMaxDensityQubits) {
        throw std::invalid_argument("verify: n-max must lie in [2, " +
                                    std::to_string(oracle::kMaxDensityQubits) +
                                    "] (density-operator capacity)");
    }
    if (cfg.tol <= 0.0) throw std::invalid_argument("verify: tol must be > 0");
    if (cfg.theta0_pi.min < 0.0 || cfg.theta0_pi.max > 2.0) {
        throw std::invalid_argument("verify: theta0 grid must lie within [0, 2] (units of pi)");
    }

    const auto thetas = cfg.theta0_pi.values();
    const auto ps = cfg.p.values();
    for (double p : ps) ChannelSpec(channels.front(), p);

    // One shared operator cache per n; read-only during the parallel phase.
    std::vector<std::unique_ptr<oracle::CollectiveOps>> ops(cfg.n_max + 1);
    for (int n = 2; n <= cfg.n_max; ++n) ops[n] = std::make_unique<oracle::CollectiveOps>(n);

    const int n_count = cfg.n_max - 1;
    const int per_channel = n_count * static_cast<int>(thetas.size() * ps.size());
    const int total = static_cast<int>(channels.size()) * per_channel;
    std::vector<std::string> rows(total);
    std::atomic<int> failures{0};

    parallel_for(total, cfg.threads, [&](int idx) {
        const int pi = idx % static_cast<int>(ps.size());
        int rest = idx / static_cast<int>(ps.size());
        const int ti = rest % static_cast<int>(thetas.size());
        rest /= static_cast<int>(thetas.size());
        const int n = 2 + rest % n_count;
        const ChannelKind kind = channels[rest / n_count];

        const auto rep = oracle::verify_point(kind, ps[pi], n, thetas[ti] * std::numbers::pi,
                                              cfg.tol, *ops[n]);
        if (!rep.pass) failures.fetch_add(1);

        std::ostringstream line;
        line << channel_token(kind) << ',' << n << ',' << csv_num(thetas[ti]) << ','
             << csv_num(ps[pi]);
        for (const auto& item : rep.items) line << ',' << csv_num(item.deviation);
        line << ',' << csv_num(rep.max_deviation) << ',' << (rep.pass ? 1 : 0);
        rows[idx] = line.str();
    });

    out << "channel,n,theta0_pi,p,dev_mz,dev_mzz,dev_y,dev_u,dev_xi1_sq,dev_xi2_sq,"
           "dev_xi3_sq,dev_cr,dev_czz,dev_varsigma_sq,dev_xi3_block_route,dev_exchange,"
           "dev_global_local,max_deviation,pass\n";
    for (const auto& row : rows) out << row << '\n';
    return failures.load();
}

}  // namespace sqz
