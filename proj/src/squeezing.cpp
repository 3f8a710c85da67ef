#include "sqz/squeezing.hpp"

#include <cmath>
#include <stdexcept>

namespace sqz {

double xi1_sq(const PairMoments& m, int n) {
    if (n < 2) throw std::invalid_argument("xi1_sq: spin count must be >= 2");
    return 1.0 + 2.0 * (n - 1) * (m.y - std::abs(m.u));
}

std::optional<double> xi2_sq(const PairMoments& m, int n) {
    if (std::abs(m.mz) <= kMeanSpinEps) return std::nullopt;
    return xi1_sq(m, n) / (m.mz * m.mz);
}

Xi3 xi3_sq(const PairMoments& m, int n) {
    const double sigma_dot = 4.0 * m.y + m.mzz;
    const double denom = (1.0 - 1.0 / n) * sigma_dot + 1.0 / n;
    if (denom <= 0.0) throw std::domain_error("xi3_sq: non-positive denominator (unphysical moments)");

    const double xi1 = xi1_sq(m, n);
    const double varsig = 1.0 + czz(m, n);
    Xi3 out;
    out.branch = (xi1 <= varsig) ? MinBranch::XI1 : MinBranch::VARSIGMA;
    out.value = std::min(xi1, varsig) / denom;
    return out;
}

SqueezingReport report(const PairMoments& m, int n, const PairDensity& pd) {
    SqueezingReport r;
    r.xi1_sq = xi1_sq(m, n);
    r.xi2_sq = xi2_sq(m, n);
    const Xi3 third = xi3_sq(m, n);
    r.xi3_sq = third.value;
    r.min_branch = third.branch;
    r.varsigma_sq = 1.0 + czz(m, n);
    r.cr = (n - 1) * concurrence_simplified(pd);

    r.zeta1_sq = std::max(0.0, 1.0 - r.xi1_sq);
    if (r.xi2_sq) r.zeta2_sq = std::max(0.0, 1.0 - *r.xi2_sq);
    r.zeta3_sq = std::max(0.0, 1.0 - r.xi3_sq);
    return r;
}

}  // namespace sqz
