#include "sqz/evolution.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace sqz {

namespace {

// C_r(0) below this is treated as "nothing to kill": the theta0 in {0, 2pi}
// degeneracies leave only FP residue (~1e-16) where a0 and x0 also vanish.
constexpr double kPresenceEps = 1e-12;

constexpr double kScanMax = 1.0 - 1e-9;
constexpr int kScanIntervals = 4096;
constexpr int kBisectMaxIter = 200;

}  // namespace

std::string_view death_quantity_token(DeathQuantity q) {
    switch (q) {
        case DeathQuantity::CONCURRENCE: return "concurrence";
        case DeathQuantity::ZETA2: return "zeta2";
        case DeathQuantity::ZETA3: return "zeta3";
    }
    throw std::logic_error("death_quantity_token: bad quantity");
}

std::string_view death_status_token(DeathStatus s) {
    switch (s) {
        case DeathStatus::VANISHES_AT: return "vanishes_at";
        case DeathStatus::NEVER_VANISHES: return "never_vanishes";
        case DeathStatus::NEVER_PRESENT: return "never_present";
    }
    throw std::logic_error("death_status_token: bad status");
}

InitialScalars::InitialScalars(const EnsembleSpec& spec)
    : n(spec.n),
      m0(initial_moments(spec)),
      cr0(rescaled_concurrence(initial_concurrence(spec), spec.n)),
      x0(sqz::x0(m0)),
      a0(sqz::a0(m0, spec.n)),
      czz0(sqz::czz(m0, spec.n)) {}

PairMoments evolve_moments(const ChannelSpec& spec, const PairMoments& m0) {
    const double p = spec.p;
    const double s = spec.s;
    PairMoments m;
    switch (spec.kind) {
        case ChannelKind::ADC:
            m.mz = s * m0.mz - p;
            m.mzz = s * s * m0.mzz - 2.0 * s * p * m0.mz + p * p;
            m.y = s * m0.y;
            m.u = s * m0.u;
            break;
        case ChannelKind::PDC:
            m.mz = m0.mz;
            m.mzz = m0.mzz;
            m.y = s * s * m0.y;
            m.u = s * s * m0.u;
            break;
        case ChannelKind::DPC:
            m.mz = s * m0.mz;
            m.mzz = s * s * m0.mzz;
            m.y = s * s * m0.y;
            m.u = s * s * m0.u;
            break;
    }
    return m;
}

SqueezingReport report_at(ChannelKind kind, const InitialScalars& init, double p,
                          bool extended_dpc) {
    const ChannelSpec spec(kind, p, extended_dpc);
    const double s = spec.s;
    const int n = init.n;
    const double mz0 = init.m0.mz;
    const double mzz0 = init.m0.mzz;

    SqueezingReport r;
    double mz_p = 0.0;   // evolved <sigma_z>
    double czz_p = 0.0;  // evolved C_zz
    double denom3 = 1.0;
    double cr_signed = 0.0;

    switch (kind) {
        case ChannelKind::ADC:
            r.xi1_sq = 1.0 - s * init.cr0;
            mz_p = s * mz0 - p;
            czz_p = s * s * init.czz0;
            denom3 = 1.0 + (1.0 / n - 1.0) * s * p * init.x0;
            cr_signed = s * init.cr0 - 0.5 * (n - 1) * s * p * init.x0;
            break;
        case ChannelKind::PDC:
            r.xi1_sq = 1.0 - s * s * init.cr0;
            mz_p = mz0;
            czz_p = init.czz0;
            denom3 = ((n - 1) * (s * s + (1.0 - s * s) * mzz0) + 1.0) / n;
            cr_signed = s * s * init.cr0 + 0.5 * init.a0 * (s * s - 1.0);
            break;
        case ChannelKind::DPC:
            r.xi1_sq = 1.0 - s * s * init.cr0;
            mz_p = s * mz0;
            czz_p = s * s * init.czz0;
            denom3 = ((n - 1) * s * s + 1.0) / n;
            cr_signed = s * s * init.cr0 + 0.5 * (n - 1) * (s * s - 1.0);
            break;
    }
    if (denom3 <= 0.0) throw std::domain_error("report_at: non-positive xi3 denominator");

    r.varsigma_sq = 1.0 + czz_p;
    r.min_branch = (r.xi1_sq <= r.varsigma_sq) ? MinBranch::XI1 : MinBranch::VARSIGMA;
    r.xi3_sq = std::min(r.xi1_sq, r.varsigma_sq) / denom3;
    if (std::abs(mz_p) > kMeanSpinEps) {
        r.xi2_sq = r.xi1_sq / (mz_p * mz_p);
        r.zeta2_sq = std::max(0.0, 1.0 - *r.xi2_sq);
    }
    r.zeta1_sq = std::max(0.0, 1.0 - r.xi1_sq);
    r.zeta3_sq = std::max(0.0, 1.0 - r.xi3_sq);
    r.cr = std::max(0.0, cr_signed);
    return r;
}

std::vector<SqueezingReport> curve(ChannelKind kind, const EnsembleSpec& spec,
                                   std::span<const double> p_grid, bool extended_dpc) {
    const InitialScalars init(spec);
    std::vector<SqueezingReport> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) out.push_back(report_at(kind, init, p, extended_dpc));
    return out;
}

namespace {

bool concurrence_present(const InitialScalars& init) {
    return init.cr0 > kPresenceEps;
}

bool zeta3_present(const InitialScalars& init) {
    // xi3(0) = xi1(0) = 1 - cr0, so zeta3 starts positive iff cr0 does.
    return init.cr0 > kPresenceEps;
}

bool zeta2_present(const InitialScalars& init) {
    const double mz0 = init.m0.mz;
    if (std::abs(mz0) <= kMeanSpinEps) return false;
    return 1.0 - (1.0 - init.cr0) / (mz0 * mz0) > kPresenceEps;
}

bool present(DeathQuantity which, const InitialScalars& init) {
    switch (which) {
        case DeathQuantity::CONCURRENCE: return concurrence_present(init);
        case DeathQuantity::ZETA2: return zeta2_present(init);
        case DeathQuantity::ZETA3: return zeta3_present(init);
    }
    return false;
}

CriticalPoint classify(DeathQuantity which, double pc) {
    if (pc < 0.0) return {which, DeathStatus::NEVER_PRESENT, std::nullopt};
    if (pc >= 1.0) return {which, DeathStatus::NEVER_VANISHES, std::nullopt};
    return {which, DeathStatus::VANISHES_AT, pc};
}

// Signed value of the monitored quantity along the moment-evolution route
// (positive while alive, crossing zero at the vanishing point). Independent
// of the analytic p_c expressions.
double signed_value(ChannelKind kind, DeathQuantity which, const InitialScalars& init,
                    double p) {
    const PairMoments m = evolve_moments(ChannelSpec(kind, p), init.m0);
    switch (which) {
        case DeathQuantity::CONCURRENCE: {
            const double w = 0.25 * (1.0 - m.mzz);
            return (init.n - 1) * 2.0 * (std::abs(m.u) - w);
        }
        case DeathQuantity::ZETA2: {
            if (std::abs(m.mz) <= kMeanSpinEps) return -1.0;  // undefined => not squeezed
            return 1.0 - xi1_sq(m, init.n) / (m.mz * m.mz);
        }
        case DeathQuantity::ZETA3:
            return 1.0 - xi3_sq(m, init.n).value;
    }
    return 0.0;
}

}  // namespace

CriticalPoint critical_strength(ChannelKind kind, DeathQuantity which,
                                const EnsembleSpec& spec) {
    const InitialScalars init(spec);
    if (!present(which, init)) return {which, DeathStatus::NEVER_PRESENT, std::nullopt};

    const int n = init.n;
    const double cr0 = init.cr0;
    const double mz0 = init.m0.mz;
    const double xk = (which == DeathQuantity::ZETA3) ? static_cast<double>(n) : 2.0;

    double pc = 0.0;
    switch (kind) {
        case ChannelKind::ADC:
            if (which == DeathQuantity::ZETA2) {
                pc = (mz0 * mz0 + cr0 - 1.0) / (1.0 + 2.0 * mz0 + mz0 * mz0);
            } else {
                if (init.x0 <= 0.0) return {which, DeathStatus::NEVER_PRESENT, std::nullopt};
                pc = xk * cr0 / ((n - 1) * init.x0);
            }
            break;
        case ChannelKind::PDC:
            if (which == DeathQuantity::ZETA2) {
                pc = 1.0 - std::sqrt((1.0 - mz0 * mz0) / cr0);
            } else {
                pc = 1.0 - std::sqrt(init.a0 / (xk * cr0 + init.a0));
            }
            break;
        case ChannelKind::DPC:
            if (which == DeathQuantity::ZETA2) {
                pc = 1.0 - std::sqrt(1.0 / (cr0 + mz0 * mz0));
            } else {
                pc = 1.0 - std::sqrt((n - 1.0) / (xk * cr0 + n - 1.0));
            }
            break;
    }
    return classify(which, pc);
}

CriticalPoint critical_strength_numeric(ChannelKind kind, DeathQuantity which,
                                        const EnsembleSpec& spec, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("critical_strength_numeric: tol must be > 0");
    const InitialScalars init(spec);
    if (!present(which, init)) return {which, DeathStatus::NEVER_PRESENT, std::nullopt};

    const auto f = [&](double p) { return signed_value(kind, which, init, p); };

    // Scan for the first sign change, then bisect inside that bracket.
    double lo = 0.0;
    double flo = f(lo);
    double hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double p = kScanMax * i / kScanIntervals;
        const double fp = f(p);
        if (flo > 0.0 && fp <= 0.0) {
            hi = p;
            bracketed = true;
            break;
        }
        lo = p;
        flo = fp;
    }
    if (!bracketed) return {which, DeathStatus::NEVER_VANISHES, std::nullopt};

    const double width = std::max(std::min(tol, 1e-10) * 1e-2, 1e-15);
    for (int it = 0; it < kBisectMaxIter && hi - lo > width; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {which, DeathStatus::VANISHES_AT, 0.5 * (lo + hi)};
}

}  // namespace sqz
