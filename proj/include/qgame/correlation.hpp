#pragma once
// Correlation machinery shared by the diagonal-game and Bell modules:
// the strategy-relabeling operators S, C, T (dihedral group D2), the
// two-parameter entangler J(gamma), Schmidt-parametrized two-qubit states
// and SU(2) strategy rotations.

#include "qgame/linalg.hpp"

namespace qgame {

// Wraps an angle into [-pi, pi]. Rejects non-finite input.
double wrap_angle(double radians);

// Third-party correlation knobs (gamma1, gamma2), wrapped to [-pi, pi]
// at construction so downstream trig never sees unwrapped angles.
struct CoordinatorParams {
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    CoordinatorParams() = default;
    CoordinatorParams(double g1, double g2);
};

// Entanglement magnitude eta1 in [0, pi] and phase eta2 in [-pi, pi]
// of the initial correlated two-qubit state. eta1 = 0 is separable.
struct SchmidtParams {
    double eta1 = 0.0;
    double eta2 = 0.0;

    SchmidtParams() = default;
    SchmidtParams(double e1, double e2);
};

// SU(2) rotation angles (theta, phi) for one player's strategy.
struct Su2Params {
    double theta = 0.0;
    double phi = 0.0;

    Su2Params() = default;
    Su2Params(double t, double p);
};

// Swap operator on H_n (x) H_n: S|i,j> = |j,i>. Real permutation, S^2 = I.
ComplexMatrix swap_operator(int n);

// Simultaneous strategy renaming: C|i,j> = |i~,j~> with i~ = (n-1)-i.
ComplexMatrix convert_operator(int n);

// Combined renaming and swap: T|i,j> = |j~,i~>; satisfies T = CS = SC.
ComplexMatrix twist_operator(int n);

// The entangler J(gamma) = exp(i gamma1 S / 2) exp(i gamma2 T / 2), built
// as the half-angle closed form (valid because S^2 = T^2 = I). Defined for
// two-strategy games only; any other n throws UnsupportedDimension.
ComplexMatrix entangler(const CoordinatorParams& gamma, int n = 2);

// Initial correlated state cos(eta1/2)|00> + e^{i eta2} sin(eta1/2)|11>.
CVector schmidt_state(const SchmidtParams& eta);

// 2x2 special unitary [[cos(t/2), -e^{-i p} sin(t/2)],
//                      [e^{i p} sin(t/2), cos(t/2)]].
ComplexMatrix su2_rotation(const Su2Params& p);

// Joint state U(a) (x) U(b) applied to the Schmidt state.
CVector schmidt_joint_state(const Su2Params& a, const Su2Params& b,
                            const SchmidtParams& eta);

}  // namespace qgame
