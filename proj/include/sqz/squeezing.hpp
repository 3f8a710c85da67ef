#pragma once

#include <optional>

#include "sqz/moments.hpp"
#include "sqz/pair_state.hpp"

namespace sqz {

/// |<sigma_z>| at or below this marks the mean spin direction as undefined;
/// xi2 is then a distinguished non-numeric outcome instead of a huge number.
inline constexpr double kMeanSpinEps = 1e-12;

/// Which argument attained the minimum in the xi3 numerator.
enum class MinBranch { XI1, VARSIGMA };

/// All squeezing quantities at one (channel, p, n, theta0) point.
/// zetaK_sq = max(0, 1 - xiK_sq) always; xi2/zeta2 are empty when the
/// mean spin vanishes.
struct SqueezingReport {
    double xi1_sq = 1.0;
    std::optional<double> xi2_sq;
    double xi3_sq = 1.0;
    double zeta1_sq = 0.0;
    std::optional<double> zeta2_sq;
    double zeta3_sq = 0.0;
    double varsigma_sq = 1.0;
    double cr = 0.0;
    MinBranch min_branch = MinBranch::XI1;
};

/// xi1^2 = 1 + 2(n-1)(y - |u|).
double xi1_sq(const PairMoments& m, int n);

/// xi2^2 = xi1^2 / mz^2, or nullopt when |mz| <= kMeanSpinEps.
std::optional<double> xi2_sq(const PairMoments& m, int n);

struct Xi3 {
    double value;
    MinBranch branch;
};

/// xi3^2 = min{xi1^2, 1 + C_zz} / [(1 - 1/n)<s1.s2> + 1/n] with
/// <s1.s2> = 4y + mzz; rejects non-positive denominators.
Xi3 xi3_sq(const PairMoments& m, int n);

/// Aggregate report; pd must be from_moments(m).
/// cr = (n-1) * concurrence_simplified(pd).
SqueezingReport report(const PairMoments& m, int n, const PairDensity& pd);

}  // namespace sqz
