#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sqz/channels.hpp"
#include "sqz/moments.hpp"
#include "sqz/squeezing.hpp"

// Brute-force verification of every closed form, recomputed from definitions
// on the full 2^n-dimensional space. Nothing here reuses the closed-form
// moment or parameter expressions it is meant to check.
namespace sqz::oracle {

inline constexpr int kMaxStateQubits = 12;    // 2^n amplitudes
inline constexpr int kMaxDensityQubits = 8;   // 4^n matrix entries

/// Amplitudes in the product basis |b1 b2 ... bn>, qubit k at bit k-1,
/// bit value 1 = ground state |1>.
using StateVector = Eigen::VectorXcd;
using DensityOperator = Eigen::MatrixXcd;

/// exp(-i theta0 Jx^2 / 2)|1>^n via Walsh-Hadamard rotation to the x product
/// basis, diagonal phase, and rotation back.
StateVector twisted_state(int n, double theta0);

/// Same state through a second, independent construction: matrix
/// exponentiation of Jx^2 on the (n+1)-dimensional symmetric sector,
/// lifted back to the full space. Agrees with twisted_state including
/// global phase.
StateVector twisted_state_dicke(int n, double theta0);

DensityOperator density_from_state(const StateVector& psi);

bool is_density_operator(const DensityOperator& rho, double tol = 1e-10);

/// Applies the channel's Kraus set independently to every qubit.
DensityOperator product_channel(const ChannelSpec& spec, const DensityOperator& rho);

/// Partial trace onto qubits (q1, q2), 0-based; result in the standard
/// product basis {|00>, |01>, |10>, |11>} with q1 the first factor.
Eigen::Matrix4cd reduce_to_pair(const DensityOperator& rho, int n, int q1, int q2);

/// Local moments read off a reduced pair state.
PairMoments pair_moments(const Eigen::Matrix4cd& rho12);

/// Dense collective operators and precomputed second-moment observables for
/// a fixed n; build once and share across all verification points at that n.
struct CollectiveOps {
    int n;
    Eigen::MatrixXcd jx, jy, jz;
    Eigen::MatrixXcd s[3][3];  // symmetrized products (Jk Jl + Jl Jk)/2
    Eigen::MatrixXcd jm2;      // (Jx - i Jy)^2

    explicit CollectiveOps(int n_);
};

/// First and symmetrized second moments of the collective spin.
struct CollectiveMoments {
    Eigen::Vector3d first;     // <Jx>, <Jy>, <Jz>
    Eigen::Matrix3d c;         // C_kl = <Jl Jk + Jk Jl>/2
    std::complex<double> jm2;  // <J-^2>
    double j2;                 // <J.J> = tr C
};

CollectiveMoments collective_moments(const DensityOperator& rho, const CollectiveOps& ops);

/// Max violation of the exchange-symmetry identities tying global moments to
/// the reduced pair (squared collective components vs local correlations,
/// <J-^2> vs (n)(n-1)u, <[Jx,Jy]+> vs the local xy anticommutator).
double symmetry_identity_violation(const CollectiveMoments& cm,
                                   const Eigen::Matrix4cd& rho12, int n);

/// Squeezing parameters rebuilt from collective moments alone.
struct CollectiveXi {
    double xi1_sq;                  // 2/n (<Jx^2+Jy^2> - |<J-^2>|)
    double xi1_sq_scan;             // numeric minimization over the normal plane
    std::optional<double> xi2_sq;   // n^2 xi1 / (4 <J>^2); empty if <J> ~ 0
    double xi3_sq;                  // Gamma route, 2x2-block closed form
    double xi3_sq_general;          // Gamma route, general 3x3 eigensolver
    double varsigma_sq;             // (4/n^2) Gamma_zz
    MinBranch min_branch;
};

CollectiveXi xi_collective(const CollectiveMoments& cm, int n);

/// Named deviation between a closed-form quantity and its oracle value.
struct PointDeviation {
    std::string quantity;
    double closed_form;
    double oracle;
    double deviation;  // |a-b| / max(1, |a|, |b|)
};

struct VerifyReport {
    ChannelKind kind;
    int n;
    double theta0;
    double p;
    std::vector<PointDeviation> items;
    double max_deviation = 0.0;
    bool pass = false;
};

/// Recomputes every closed-form quantity (4 moments, xi1/2/3, C_r, C_zz,
/// varsigma^2) from the brute-force evolution and reports per-quantity
/// deviations; pass iff all are <= tol. ops.n must equal n.
VerifyReport verify_point(ChannelKind kind, double p, int n, double theta0,
                          double tol, const CollectiveOps& ops);

}  // namespace sqz::oracle
