#pragma once
// The Bell-experiment coordination game: a common non-diagonal payoff
// operator sqrt(2)(sigma_x (x) sigma_x + sigma_z (x) sigma_z), strategies as
// SU(2) rotations of a Schmidt-parametrized initial state, and numerical
// equilibrium search checked against the closed-form Nash payoff
// sqrt(2)(1 + sin(eta1) cos(eta2)).

#include "qgame/correlation.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/linalg.hpp"

namespace qgame {

struct BellGame {
    ComplexMatrix op;  // common payoff operator of both players
    SchmidtParams eta;
};

struct BellNashReport {
    SchmidtParams eta;
    double analytic = 0.0;  // closed-form Nash payoff
    double numeric = 0.0;   // payoff of the reported search equilibrium
    double gap = 0.0;       // |analytic - numeric|
    bool theta_flat_verified = false;
    double residual = 0.0;
    bool converged = false;
};

// sqrt(2) (sigma_x (x) sigma_x + sigma_z (x) sigma_z) with sigma_z|0> = |0>.
// Eigenvalues are {2 sqrt(2), 0, 0, -2 sqrt(2)} on the Bell basis.
ComplexMatrix bell_operator();

BellGame bell_game(const SchmidtParams& eta);

// Common payoff <Psi(a,b;eta)| op |Psi(a,b;eta)>, identical for both players.
double bell_payoff(const Su2Params& a, const Su2Params& b, const SchmidtParams& eta);

// Closed-form Nash payoff sqrt(2)(1 + sin(eta1) cos(eta2)); range [0, 2 sqrt(2)].
double bell_nash_payoff(const SchmidtParams& eta);

// Alternating best response over the (theta, phi) chart per player.
// theta_flat_verified reports whether the common payoff is constant along
// the equal-theta, phi = 0 line over a 64-point sweep (within 1e-9).
BellNashReport bell_nash_search(const SchmidtParams& eta, const SearchConfig& cfg);

}  // namespace qgame
