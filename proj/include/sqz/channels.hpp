#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace sqz {

/// 2x2 complex operator; carrier for Kraus operators, single-qubit
/// observables and single-qubit density operators. Basis (|0>, |1>)
/// with |0> the excited and |1> the ground state.
using QubitOperator = Eigen::Matrix2cd;

enum class ChannelKind { ADC, PDC, DPC };

/// Canonical lowercase tokens used by the CLI and CSV files.
std::string_view channel_token(ChannelKind kind);
ChannelKind channel_from_token(std::string_view token);

/// A single-qubit decoherence channel with strength p and survival
/// probability s = 1 - p. p is the primary parameter everywhere; time
/// enters only through strength_from_time(). DPC admits p in (1, 4/3]
/// (still completely positive, p' = 3p/4 <= 1) behind the explicit
/// extended flag; the default domain is [0, 1] for every channel.
struct ChannelSpec {
    ChannelKind kind;
    double p;
    double s;

    ChannelSpec(ChannelKind kind_, double p_, bool extended_dpc = false);
};

/// Kraus operators {E_k} of the channel; sum_k E_k^dag E_k == identity.
std::vector<QubitOperator> kraus_set(const ChannelSpec& spec);

/// Schroedinger picture: rho -> sum_k E_k rho E_k^dag.
/// Rejects inputs that are not single-qubit density operators.
QubitOperator apply_state(const ChannelSpec& spec, const QubitOperator& rho);

/// Heisenberg picture: the dual map on observables, A -> sum_k E_k^dag A E_k,
/// implemented entrywise in closed form so that the duality relation
/// Tr[A apply_state(rho)] == Tr[apply_observable(A) rho] is a genuine
/// cross-check of the Kraus sets rather than an identity by construction.
QubitOperator apply_observable(const ChannelSpec& spec, const QubitOperator& a);

/// p = 1 - exp(-gamma*t) for decay rate gamma >= 0 and time t >= 0.
double strength_from_time(double gamma, double t);

/// True if rho is Hermitian, unit-trace and positive semidefinite
/// within tolerance tol.
bool is_density_operator(const QubitOperator& rho, double tol = 1e-10);

}  // namespace sqz
