#include "sqz/pair_state.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sqz {

namespace {
constexpr double kPosTol = 1e-12;
}

PairDensity from_moments(const PairMoments& m) {
    PairDensity pd;
    pd.vp = 0.25 * (1.0 + 2.0 * m.mz + m.mzz);
    pd.vm = 0.25 * (1.0 - 2.0 * m.mz + m.mzz);
    pd.w = 0.25 * (1.0 - m.mzz);
    pd.u = m.u;
    pd.y = m.y;

    if (pd.vp < -kPosTol || pd.vm < -kPosTol || pd.w < -kPosTol ||
        std::abs(pd.vp + pd.vm + 2.0 * pd.w - 1.0) > kPosTol ||
        pd.vp * pd.vm < std::norm(pd.u) - kPosTol ||
        pd.w < std::abs(pd.y) - kPosTol) {
        throw std::domain_error("from_moments: moments yield a non-positive pair state");
    }
    return pd;
}

Eigen::Matrix4cd to_matrix(const PairDensity& pd) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = pd.vp;
    rho(3, 3) = pd.vm;
    rho(1, 1) = rho(2, 2) = pd.w;
    rho(0, 3) = pd.u;
    rho(3, 0) = std::conj(pd.u);
    rho(1, 2) = rho(2, 1) = pd.y;
    return rho;
}

double concurrence_general(const Eigen::Matrix4cd& rho12) {
    if ((rho12 - rho12.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(rho12.trace() - Complex(1.0, 0.0)) > 1e-10) {
        throw std::domain_error("concurrence_general: input is not Hermitian unit-trace");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> herm(rho12);
    if (herm.eigenvalues().minCoeff() < -1e-10) {
        throw std::domain_error("concurrence_general: input is not positive semidefinite");
    }

    // spin-flip operator sigma_y (x) sigma_y in the product basis
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Eigen::Matrix4cd flipped = yy * rho12.conjugate() * yy;

    // The spectrum of rho * flipped equals that of the Hermitian PSD matrix
    // sqrt(rho) * flipped * sqrt(rho) (AB and BA share eigenvalues), which the
    // self-adjoint solver resolves to full absolute precision even for the
    // clustered tiny eigenvalues this family produces near p=0 and p->1.
    Eigen::Vector4d clipped = herm.eigenvalues().cwiseMax(0.0);
    const Eigen::Matrix4cd sqrt_rho = herm.eigenvectors() *
                                      clipped.cwiseSqrt().asDiagonal() *
                                      herm.eigenvectors().adjoint();
    Eigen::Matrix4cd prod = sqrt_rho * flipped * sqrt_rho;
    prod = 0.5 * (prod + prod.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(prod, Eigen::EigenvaluesOnly);

    // Magnitudes within 1e-14 of zero are roundoff; exact zeros otherwise
    // surface as ~1e-16 and the square root would blow them up to ~1e-8.
    // (The threshold must stay well below genuine small eigenvalues, which
    // reach ~7e-13 on this state family near p -> 1.)
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        const double ev = es.eigenvalues()(i);
        if (ev < -1e-12) {
            throw std::domain_error("concurrence_general: spin-flip spectrum is negative");
        }
        lam[i] = ev <= 1e-14 ? 0.0 : std::sqrt(ev);
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence_symmetric(const PairDensity& pd) {
    const double coherence = 2.0 * (std::abs(pd.u) - pd.w);
    const double exchange = 2.0 * (pd.y - std::sqrt(std::max(0.0, pd.vp * pd.vm)));
    return std::max({0.0, coherence, exchange});
}

double concurrence_simplified(const PairDensity& pd) {
    return std::max(0.0, 2.0 * (std::abs(pd.u) - pd.w));
}

}  // namespace sqz
