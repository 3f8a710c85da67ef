#pragma once

#include <Eigen/Dense>

#include "sqz/moments.hpp"

namespace sqz {

/// Block-diagonal two-spin reduced density operator of an exchange-symmetric
/// parity state, in the basis {|00>, |11>} (+) {|01>, |10>}:
///
///     [ v+  u* ]        [ w  y ]
///     [ u   v- ]  (+)   [ y  w ]
///
/// Only these five scalars are stored; the full 4x4 array exists solely for
/// the general concurrence route.
struct PairDensity {
    double vp = 0.0;
    double vm = 0.0;
    double w = 0.0;
    Complex u{0.0, 0.0};
    double y = 0.0;
};

/// v± = (1 ± 2 mz + mzz)/4, w = (1 - mzz)/4, coherences carried over.
/// Rejects moments whose pair state violates unit trace or positivity
/// beyond 1e-12.
PairDensity from_moments(const PairMoments& m);

/// Dense 4x4 form in the standard product basis {|00>, |01>, |10>, |11>}.
Eigen::Matrix4cd to_matrix(const PairDensity& pd);

/// Wootters concurrence of an arbitrary two-qubit density operator:
/// max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
/// eigenvalues of rho (sy x sy) rho^* (sy x sy). Rejects non-Hermitian or
/// non-positive inputs.
double concurrence_general(const Eigen::Matrix4cd& rho12);

/// Closed form for the block-diagonal family:
/// max{0, 2(|u| - w), 2(y - sqrt(v+ v-))}.
double concurrence_symmetric(const PairDensity& pd);

/// max(0, 2(|u| - w)); equals concurrence_symmetric for every state reached
/// from the twisted initial state through ADC/PDC/DPC (where |u| >= y and
/// w^2 <= v+ v-). Out-of-provenance inputs still yield a value but the
/// equality is not guaranteed.
double concurrence_simplified(const PairDensity& pd);

}  // namespace sqz
