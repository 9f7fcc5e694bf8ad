#pragma once
// Nash equilibrium search over two-parameter-per-player strategy charts by
// alternating best response, first-order verification of equilibria, and a
// classical 2x2 support-enumeration oracle for the gamma = 0 reduction.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qgame/payoff.hpp"

namespace qgame {

struct SearchConfig {
    int grid_density = 24;     // points per angle dimension
    int refine_iters = 200;    // cap on alternation rounds
    int restarts = 16;
    double step_tol = 1e-9;    // golden-section interval tolerance
    double payoff_tol = 1e-8;  // improvement / residual certification level
    std::uint64_t rng_seed = 12345;

    void validate() const;  // throws InvalidParameter on nonsense
};

struct NashResult {
    StrategyParams a_star;
    StrategyParams b_star;
    double payoff_a = 0.0;
    double payoff_b = 0.0;
    double residual = 0.0;  // max first-order violation, see verify_nash
    bool converged = false;
    int restarts_agreeing = 0;
    // Chart coordinates whose finite-difference second derivative at the
    // equilibrium is below 1e-7 (locally flat payoff directions).
    std::vector<std::string> flat_directions;
};

enum class EquilibriumKind { pure, mixed };

struct ClassicalEquilibrium {
    std::vector<double> x;  // row distribution of player A
    std::vector<double> y;  // column distribution of player B
    double payoff_a = 0.0;
    double payoff_b = 0.0;
    EquilibriumKind kind = EquilibriumKind::pure;
};

struct ClassicalSolution {
    std::vector<ClassicalEquilibrium> equilibria;
    // Set when an indifference denominator vanishes (continuum of
    // equilibria); the listed equilibria are then representatives only.
    bool degenerate = false;
};

// ---------------------------------------------------------------------------
// Generic alternating-best-response core, shared with the Bell module.
// A player strategy is a point in a 2-D chart; payoffs are arbitrary smooth
// functions of both charts.
// ---------------------------------------------------------------------------

struct CoordSpec {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;  // payoff must be (hi - lo)-periodic along it
    std::string name;
};

using Chart = std::array<CoordSpec, 2>;
using Point2 = std::array<double, 2>;

struct Profile {
    Point2 a{0.0, 0.0};
    Point2 b{0.0, 0.0};
};

// payoff as seen by one player, as a function of (a, b) chart points
using PayoffFn = std::function<double(const Point2&, const Point2&)>;

struct SearchProblem {
    PayoffFn payoff_a;
    PayoffFn payoff_b;
    Chart chart_a;
    Chart chart_b;
    std::vector<Profile> seeds;  // deterministic starts, tried before random ones
};

struct SearchOutcome {
    Profile profile;
    double payoff_a = 0.0;
    double payoff_b = 0.0;
    double residual = 0.0;
    bool converged = false;
    int restarts_agreeing = 0;
    std::vector<std::string> flat_directions;
};

// Maximizes one player's payoff over their own chart, opponent fixed:
// coarse grid scan (ties broken toward the lexicographically smallest
// point), then coordinate-wise golden-section refinement. The returned
// value never falls below the grid maximum.
Point2 best_response(const PayoffFn& own_payoff, bool optimize_a,
                     const Profile& current, const Chart& own_chart,
                     const SearchConfig& cfg, double* best_value = nullptr);

// Residual of the first-order equilibrium conditions at a profile: the
// larger of the chart-feasible ascent-gradient norm (central differences,
// step eps) and the best payoff improvement found by a fresh unilateral
// grid sweep, maximized over both players.
double profile_residual(const SearchProblem& prob, const Profile& p,
                        const SearchConfig& cfg, double eps = 1e-5);

// Alternating best response from the deterministic seeds plus random
// restarts. Among restarts whose residual certifies an equilibrium
// (residual <= payoff_tol) the lexicographically smallest profile is
// reported; with no certified restart, the smallest-residual profile is.
// Deterministic for a fixed rng_seed.
SearchOutcome alternating_search(const SearchProblem& prob, const SearchConfig& cfg);

// ---------------------------------------------------------------------------
// Diagonal-game front end
// ---------------------------------------------------------------------------

// Best response of player A to a fixed opponent strategy, via the analytic
// payoff over the (t, xi) chart with a0 = cos t, a1 = sin t.
StrategyParams best_response_a(const DiagonalGame& game, const StrategyParams& b,
                               const CoordinatorParams& gamma, const SearchConfig& cfg);
StrategyParams best_response_b(const DiagonalGame& game, const StrategyParams& a,
                               const CoordinatorParams& gamma, const SearchConfig& cfg);

// Full equilibrium search. Non-convergence is reported through the flag,
// not an error; the best profile found is always returned.
NashResult nash_search(const DiagonalGame& game, const CoordinatorParams& gamma,
                       const SearchConfig& cfg);

// First-order residual at a given profile (see profile_residual).
double verify_nash(const DiagonalGame& game, const StrategyParams& a,
                   const StrategyParams& b, const CoordinatorParams& gamma,
                   const SearchConfig& cfg, double eps = 1e-5);

// Support enumeration for classical 2x2 bimatrix games: all four pure
// profiles plus the interior mixed candidate from the indifference
// conditions (x solves B-indifference, y solves A-indifference).
ClassicalSolution classical_nash_2x2(const Table& a_table, const Table& b_table);

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64): restart starts derive from
// (rng_seed, restart index), so results are reproducible bit for bit.
// ---------------------------------------------------------------------------

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double next_unit();                       // [0, 1)
    double next_in(double lo, double hi);     // [lo, hi)

private:
    std::uint64_t state_;
};

}  // namespace qgame
