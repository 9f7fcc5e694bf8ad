#pragma once
// Diagonal quantum games: classical payoff tables embedded as diagonal
// operators, the correlated payoff operator J†MJ and its split into
// pseudo-classical and interference parts, analytic payoff formulas, and
// the altruism-mixture view of symmetric games.

#include <array>
#include <utility>
#include <vector>

#include "qgame/correlation.hpp"
#include "qgame/linalg.hpp"

namespace qgame {

// Real n x n payoff table, row = own strategy, column = opponent strategy.
using Table = std::vector<std::vector<double>>;

// Entrywise tolerance for the symmetry predicates; tables are user input
// (often JSON round-trips), so exact equality is too strict.
inline constexpr double GAME_SYMMETRY_TOL = 1e-9;

struct DiagonalGame {
    int n = 2;
    Table a;  // payoff table of player A
    Table b;  // payoff table of player B

    DiagonalGame(Table a_table, Table b_table);

    // B = SAS as tables, i.e. B_ij = A_ji. Such games look identical to both
    // players.
    bool symmetric(double tol = GAME_SYMMETRY_TOL) const;
    // B = TAT as tables, i.e. B_ij = A_{j~ i~} with i~ = (n-1)-i.
    bool t_symmetric(double tol = GAME_SYMMETRY_TOL) const;
};

// One player's strategy in the canonical three-parameter chart:
// amplitudes (a0, a1 e^{i phase}) with a0, a1 >= 0 and a0^2 + a1^2 = 1.
struct StrategyParams {
    double a0 = 1.0;
    double a1 = 0.0;
    double phase = 0.0;  // xi for player A, chi for player B

    StrategyParams() = default;
    StrategyParams(double a0_in, double a1_in, double phase_in);

    // Canonicalizes an arbitrary normalized amplitude pair by removing the
    // global phase.
    static StrategyParams from_amplitudes(Cx c0, Cx c1);

    // Chart used by the equilibrium search: a0 = cos(t), a1 = sin(t) with
    // t in [0, pi/2].
    static StrategyParams from_mixing_angle(double t, double xi);

    double mixing_angle() const;  // t = atan2(a1, a0)
    CVector to_state() const;     // (a0, a1 e^{i phase})
};

struct PayoffBreakdown {
    double total = 0.0;
    double pseudo_classical = 0.0;
    double interference = 0.0;
};

// cos^2(x/2) and sin^2(x/2) through the half-angle identities
// (1 +- cos x)/2. These hit exact dyadic values at the quarter-turn angles,
// which keeps the published coefficient triples exact.
double half_cos_sq(double x);
double half_sin_sq(double x);

// Mixing coefficients of the pseudo-classical family:
// { cos^2(g1/2), cos^2(g2/2) - cos^2(g1/2), sin^2(g2/2) } applied to
// A, SAS, CAC. The middle coefficient may be negative; the family is
// affine, not convex.
std::array<double, 3> pc_coefficients(const CoordinatorParams& gamma);

// Embeds a payoff table as the diagonal operator with <i,j|M|i,j> = M_ij.
ComplexMatrix diagonal_operator(const Table& table);

// Correlated payoff operator J†(gamma) M J(gamma) for 4x4 Hermitian M.
ComplexMatrix correlated_operator(const ComplexMatrix& m,
                                  const CoordinatorParams& gamma);

// Pseudo-classical part of the correlated operator: a real diagonal affine
// mixture of A, SAS and CAC. Two-strategy tables only.
ComplexMatrix pc_operator(const Table& a_table, const CoordinatorParams& gamma);

// Interference part: (i/2) sin(g1) [A,S]-type commutators. Hermitian with
// zero diagonal; vanishes at gamma = 0.
ComplexMatrix in_operator(const Table& a_table, const CoordinatorParams& gamma);

// Full payoff <a,b| J†MJ |a,b> split into its pseudo-classical and
// interference contributions evaluated on the same separable state.
// M must be a diagonal 4x4 operator.
PayoffBreakdown payoff(const ComplexMatrix& m, const StrategyParams& a,
                       const StrategyParams& b, const CoordinatorParams& gamma);

// Same breakdown through the closed-form expressions:
// pc part sums a_i^2 b_j^2 over the pc table, interference is
// -a0 a1 b0 b1 [G+ sin(xi+chi) + G- sin(xi-chi)] with
// G+ = (A00 - A11) sin g2 and G- = (A01 - A10) sin g1.
PayoffBreakdown payoff_analytic(const Table& a_table, const StrategyParams& a,
                                const StrategyParams& b,
                                const CoordinatorParams& gamma);

// Classical bilinear payoff sum_ij x_i A_ij y_j for mixed strategies.
double classical_payoff(const Table& a_table, const std::vector<double>& x,
                        const std::vector<double>& y);

// For a symmetric game (B = SAS) at gamma2 = 0, the effective classical
// tables are the altruism mixtures
//   (cos^2(g1/2) A + sin^2(g1/2) B, cos^2(g1/2) B + sin^2(g1/2) A).
std::pair<Table, Table> altruism_mixture(const DiagonalGame& game, double gamma1);

// The analogous gamma2-indexed family for T-symmetric games (B = TAT) at
// gamma1 = pi/2: the diagonal of the pc operator at (pi/2, gamma2), returned
// as effective tables for both players.
std::pair<Table, Table> t_symmetric_mixture(const DiagonalGame& game, double gamma2);

}  // namespace qgame
