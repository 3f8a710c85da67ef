#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sqz/channels.hpp"
#include "sqz/moments.hpp"
#include "sqz/squeezing.hpp"

namespace sqz {

/// Quantities that can suddenly die at finite decoherence strength.
enum class DeathQuantity { CONCURRENCE, ZETA2, ZETA3 };

enum class DeathStatus { VANISHES_AT, NEVER_VANISHES, NEVER_PRESENT };

std::string_view death_quantity_token(DeathQuantity q);
std::string_view death_status_token(DeathStatus s);

/// Classification of a vanishing point:
///  - VANISHES_AT: positive at p=0 and zero from p_c on (p_c in [0,1))
///  - NEVER_VANISHES: positive at p=0 with no root in [0,1)
///  - NEVER_PRESENT: already zero (or undefined) at p=0
struct CriticalPoint {
    DeathQuantity which;
    DeathStatus status;
    std::optional<double> p_c;  // set exactly when status == VANISHES_AT
};

/// Initial-state scalars that feed every evolved closed form.
struct InitialScalars {
    int n;
    PairMoments m0;
    double cr0;    // rescaled concurrence (n-1)C0
    double x0;     // 1 + 2 mz0 + mzz0
    double a0;     // (n-1)(1 - mzz0)
    double czz0;   // (n-1)(mzz0 - mz0^2)

    explicit InitialScalars(const EnsembleSpec& spec);
};

/// One decoherence step on the moments:
///   ADC: mz -> s mz - p, mzz -> s^2 mzz - 2sp mz + p^2, y -> s y, u -> s u
///   PDC: mz, mzz unchanged, y -> s^2 y, u -> s^2 u
///   DPC: mz -> s mz, mzz -> s^2 mzz, y -> s^2 y, u -> s^2 u
PairMoments evolve_moments(const ChannelSpec& spec, const PairMoments& m0);

/// Closed-form report at one strength, computed from the initial scalars
/// directly (the second, independent path is squeezing::report applied to
/// evolve_moments output; both agree to 1e-12).
SqueezingReport report_at(ChannelKind kind, const InitialScalars& init, double p,
                          bool extended_dpc = false);

/// Full curve over a grid of strengths.
std::vector<SqueezingReport> curve(ChannelKind kind, const EnsembleSpec& spec,
                                   std::span<const double> p_grid,
                                   bool extended_dpc = false);

/// Analytic critical strength (vanishing point) for the given quantity.
CriticalPoint critical_strength(ChannelKind kind, DeathQuantity which,
                                const EnsembleSpec& spec);

/// Numeric cross-check: locates the smallest root of the signed quantity on
/// [0, 1-1e-9] by scan plus bisection over the moment-evolution route, fully
/// independent of the analytic p_c formulas. Classification rules match
/// critical_strength; tol bounds the returned root's accuracy in p.
CriticalPoint critical_strength_numeric(ChannelKind kind, DeathQuantity which,
                                        const EnsembleSpec& spec, double tol);

}  // namespace sqz
