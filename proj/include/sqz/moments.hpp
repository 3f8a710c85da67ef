#pragma once

#include <complex>

namespace sqz {

using Complex = std::complex<double>;

/// An ensemble of n spin-1/2 particles prepared by one-axis twisting:
/// exp(-i*theta0*Jx^2/2) applied to the collective ground state |1>^n.
/// theta0 is stored in radians and reduced into [0, 2*pi].
struct EnsembleSpec {
    int n;
    double theta0;

    EnsembleSpec(int n_, double theta0_);
};

/// The four local expectations that determine every squeezing parameter
/// and the pairwise concurrence for this state family:
///   mz  = <sigma_1z>
///   mzz = <sigma_1z sigma_2z>
///   y   = <sigma_1+ sigma_2->   (real by exchange symmetry)
///   u   = <sigma_1- sigma_2->   (the |00><11| coherence, as <00|rho|11>)
struct PairMoments {
    double mz = 0.0;
    double mzz = 0.0;
    double y = 0.0;
    Complex u{0.0, 0.0};
};

/// b^e for integer e >= 0, with 0^0 == 1 (exact integer exponentiation;
/// the N=2 degenerate exponents rely on this).
double ipow(double base, int exp);

/// Closed-form moments of the twisted state at decoherence strength zero.
PairMoments initial_moments(const EnsembleSpec& spec);

/// Closed-form initial pairwise concurrence C0; always >= 0.
double initial_concurrence(const EnsembleSpec& spec);

/// C_r = (n-1) * c.
double rescaled_concurrence(double c, int n);

/// C_zz = (n-1) * (mzz - mz^2), the rescaled zz correlation.
double czz(const PairMoments& m, int n);

/// x0 = 1 + 2*mz + mzz, evaluated on initial moments.
double x0(const PairMoments& m0);

/// a0 = (n-1) * (1 - mzz), evaluated on initial moments.
double a0(const PairMoments& m0, int n);

}  // namespace sqz
