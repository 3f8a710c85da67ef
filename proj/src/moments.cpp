#include "sqz/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqz {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

EnsembleSpec::EnsembleSpec(int n_, double theta0_) : n(n_), theta0(theta0_) {
    if (n < 2) throw std::invalid_argument("EnsembleSpec: spin count must be >= 2");
    if (!std::isfinite(theta0)) throw std::invalid_argument("EnsembleSpec: twist angle must be finite");
    theta0 = std::fmod(theta0, kTwoPi);
    if (theta0 < 0.0) theta0 += kTwoPi;
}

double ipow(double base, int exp) {
    if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
    double acc = 1.0;
    double b = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) acc *= b;
        b *= b;
    }
    return acc;
}

PairMoments initial_moments(const EnsembleSpec& spec) {
    const double half = spec.theta0 / 2.0;
    const double ch = std::cos(half);
    const double c = ipow(std::cos(spec.theta0), spec.n - 2);

    PairMoments m;
    m.mz = -ipow(ch, spec.n - 1);
    m.mzz = (1.0 + c) / 2.0;
    m.y = (1.0 - c) / 8.0;
    m.u = Complex(-(1.0 - c) / 8.0, -0.5 * std::sin(half) * ipow(ch, spec.n - 2));
    return m;
}

double initial_concurrence(const EnsembleSpec& spec) {
    const double half = spec.theta0 / 2.0;
    const double c = ipow(std::cos(spec.theta0), spec.n - 2);
    const double sh = std::sin(half);
    const double root = std::sqrt((1.0 - c) * (1.0 - c) +
                                  16.0 * sh * sh * ipow(std::cos(half), 2 * spec.n - 4));
    return std::max(0.0, 0.25 * (root - 1.0 + c));
}

double rescaled_concurrence(double c, int n) {
    if (c < 0.0) throw std::invalid_argument("rescaled_concurrence: concurrence must be >= 0");
    if (n < 2) throw std::invalid_argument("rescaled_concurrence: spin count must be >= 2");
    return (n - 1) * c;
}

double czz(const PairMoments& m, int n) {
    return (n - 1) * (m.mzz - m.mz * m.mz);
}

double x0(const PairMoments& m0) {
    return 1.0 + 2.0 * m0.mz + m0.mzz;
}

double a0(const PairMoments& m0, int n) {
    return (n - 1) * (1.0 - m0.mzz);
}

}  // namespace sqz
