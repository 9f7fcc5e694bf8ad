#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle_helpers.hpp"
#include "qgame/equilibrium.hpp"

using namespace qgame;

namespace {

constexpr double kPi = std::numbers::pi;

const Table kPd{{3.0, 0.0}, {5.0, 1.0}};
const Table kPdPartner{{3.0, 5.0}, {0.0, 1.0}};

SearchConfig fast_config() {
    SearchConfig cfg;
    cfg.restarts = 8;
    return cfg;
}

bool payoffs_match_some_equilibrium(const NashResult& got, const ClassicalSolution& want,
                                    double tol) {
    for (const ClassicalEquilibrium& eq : want.equilibria) {
        if (std::abs(got.payoff_a - eq.payoff_a) < tol &&
            std::abs(got.payoff_b - eq.payoff_b) < tol) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("search config validation") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.grid_density = 2;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
    cfg = SearchConfig{};
    cfg.payoff_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidParameter);
}

TEST_CASE("best response to a dominant-strategy game") {
    const DiagonalGame pd(kPd, kPdPartner);
    const SearchConfig cfg = fast_config();
    // row 1 strictly dominates at gamma = 0, whatever b does
    for (double t : {0.0, 0.4, kPi / 2.0}) {
        const StrategyParams b = StrategyParams::from_mixing_angle(t, 0.3);
        const StrategyParams br =
            best_response_a(pd, b, CoordinatorParams(0.0, 0.0), cfg);
        CHECK(br.a0 < 1e-12);
        CHECK(br.a1 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("best response on a flat landscape returns the constant payoff") {
    const Table flat{{2.5, 2.5}, {2.5, 2.5}};
    const DiagonalGame game(flat, flat);
    const SearchConfig cfg = fast_config();
    const StrategyParams b = StrategyParams::from_mixing_angle(0.8, -1.1);
    const StrategyParams br = best_response_a(game, b, CoordinatorParams(0.4, 0.2), cfg);
    const double value =
        payoff_analytic(flat, br, b, CoordinatorParams(0.4, 0.2)).total;
    CHECK(value == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("best response dominates random sampling") {
    oracle::Rng rng(211);
    const SearchConfig cfg = fast_config();
    const CoordinatorParams g(kPi / 2.0, 0.0);
    for (int round = 0; round < 3; ++round) {
        const Table a = rng.table2();
        const DiagonalGame game(a, a);
        const StrategyParams b = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const StrategyParams br = best_response_a(game, b, g, cfg);
        const double br_value = payoff_analytic(a, br, b, g).total;
        double best_sampled = -1e300;
        for (int i = 0; i < 10000; ++i) {
            const StrategyParams probe = StrategyParams::from_mixing_angle(
                rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
            best_sampled = std::max(best_sampled, payoff_analytic(a, probe, b, g).total);
        }
        CHECK(br_value >= best_sampled - 1e-9);
    }
}

TEST_CASE("best response value never falls below its own grid") {
    oracle::Rng rng(223);
    const SearchConfig cfg = fast_config();
    for (int round = 0; round < 3; ++round) {
        const Table a = rng.table2();
        const DiagonalGame game(a, a);
        const CoordinatorParams g(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const StrategyParams b = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const StrategyParams br = best_response_a(game, b, g, cfg);
        const double br_value = payoff_analytic(a, br, b, g).total;
        for (int i = 0; i < cfg.grid_density; ++i) {
            const double t = (kPi / 2.0) * i / (cfg.grid_density - 1);
            for (int j = 0; j < cfg.grid_density; ++j) {
                const double xi = -kPi + 2.0 * kPi * j / (cfg.grid_density - 1);
                const StrategyParams probe = StrategyParams::from_mixing_angle(t, xi);
                CHECK(br_value >= payoff_analytic(a, probe, b, g).total - 1e-12);
            }
        }
    }
}

TEST_CASE("classical 2x2 support enumeration") {
    const ClassicalSolution pd = classical_nash_2x2(kPd, kPdPartner);
    REQUIRE(pd.equilibria.size() == 1);
    CHECK_FALSE(pd.degenerate);
    CHECK(pd.equilibria[0].kind == EquilibriumKind::pure);
    CHECK(pd.equilibria[0].x == std::vector<double>{0.0, 1.0});
    CHECK(pd.equilibria[0].y == std::vector<double>{0.0, 1.0});
    CHECK(pd.equilibria[0].payoff_a == 1.0);
    CHECK(pd.equilibria[0].payoff_b == 1.0);

    const Table pennies_a{{1.0, -1.0}, {-1.0, 1.0}};
    const Table pennies_b{{-1.0, 1.0}, {1.0, -1.0}};
    const ClassicalSolution pennies = classical_nash_2x2(pennies_a, pennies_b);
    REQUIRE(pennies.equilibria.size() == 1);
    CHECK(pennies.equilibria[0].kind == EquilibriumKind::mixed);
    CHECK(pennies.equilibria[0].x[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pennies.equilibria[0].y[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pennies.equilibria[0].payoff_a == doctest::Approx(0.0).epsilon(1e-14));

    const Table zeros{{0.0, 0.0}, {0.0, 0.0}};
    CHECK(classical_nash_2x2(zeros, zeros).degenerate);
}

TEST_CASE("stag hunt: multiple equilibria are all reported") {
    const Table stag_a{{4.0, 0.0}, {3.0, 3.0}};
    const Table stag_b{{4.0, 3.0}, {0.0, 3.0}};  // transpose
    const ClassicalSolution s = classical_nash_2x2(stag_a, stag_b);
    REQUIRE(s.equilibria.size() == 3);
    CHECK_FALSE(s.degenerate);
    CHECK(s.equilibria[0].kind == EquilibriumKind::pure);
    CHECK(s.equilibria[0].payoff_a == 4.0);
    CHECK(s.equilibria[1].kind == EquilibriumKind::pure);
    CHECK(s.equilibria[1].payoff_a == 3.0);
    CHECK(s.equilibria[2].kind == EquilibriumKind::mixed);
    CHECK(s.equilibria[2].x[0] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(s.equilibria[2].payoff_a == doctest::Approx(3.0).epsilon(1e-14));

    // the search reports the lexicographically smallest certified profile,
    // which is the (stag, stag) chart origin here
    const NashResult r = nash_search(DiagonalGame(stag_a, stag_b),
                                     CoordinatorParams(0.0, 0.0), fast_config());
    CHECK(r.converged);
    CHECK(r.payoff_a == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(r.payoff_b == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("nash search finds the prisoner's dilemma equilibrium at gamma = 0") {
    const DiagonalGame pd(kPd, kPdPartner);
    const NashResult r = nash_search(pd, CoordinatorParams(0.0, 0.0), fast_config());
    CHECK(r.converged);
    CHECK(r.payoff_a == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.payoff_b == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.a_star.a1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.b_star.a1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.residual <= fast_config().payoff_tol);
}

TEST_CASE("nash search on a constant game converges with zero residual") {
    const Table flat{{2.0, 2.0}, {2.0, 2.0}};
    const DiagonalGame game(flat, flat);
    const NashResult r = nash_search(game, CoordinatorParams(0.7, -0.3), fast_config());
    CHECK(r.converged);
    CHECK(r.residual < 1e-12);
    CHECK(r.payoff_a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.restarts_agreeing >= fast_config().restarts);
    // every chart direction is flat
    CHECK(r.flat_directions.size() == 4);
}

TEST_CASE("nash search solves the half-altruistic family member at gamma1 = pi/2") {
    const DiagonalGame pd(kPd, kPdPartner);
    const CoordinatorParams g(kPi / 2.0, 0.0);
    const NashResult r = nash_search(pd, g, fast_config());
    CHECK(r.converged);

    const auto tables = altruism_mixture(pd, kPi / 2.0);
    const ClassicalSolution classical = classical_nash_2x2(tables.first, tables.second);
    REQUIRE_FALSE(classical.equilibria.empty());
    CHECK(payoffs_match_some_equilibrium(r, classical, 1e-6));
    // the half-altruistic PD coordinates on mutual cooperation
    CHECK(r.payoff_a == doctest::Approx(3.0).epsilon(1e-6));
    // the profile itself must survive verification
    CHECK(verify_nash(pd, r.a_star, r.b_star, g, fast_config()) <=
          fast_config().payoff_tol);
}

TEST_CASE("verify_nash residuals") {
    const SearchConfig cfg = fast_config();
    const Table flat{{1.0, 1.0}, {1.0, 1.0}};
    CHECK(verify_nash(DiagonalGame(flat, flat), StrategyParams(),
                      StrategyParams(), CoordinatorParams(0.0, 0.0), cfg) < 1e-12);

    const DiagonalGame pd(kPd, kPdPartner);
    const StrategyParams defect = StrategyParams::from_mixing_angle(kPi / 2.0, 0.0);
    const StrategyParams cooperate = StrategyParams::from_mixing_angle(0.0, 0.0);
    CHECK(verify_nash(pd, defect, defect, CoordinatorParams(0.0, 0.0), cfg) < 1e-8);

    // mutual cooperation leaves a 5 - 3 = 2 unilateral gain on the table
    const double res =
        verify_nash(pd, cooperate, cooperate, CoordinatorParams(0.0, 0.0), cfg);
    CHECK(res == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("nash search agrees with the classical oracle at gamma = 0") {
    oracle::Rng rng(227);
    const SearchConfig cfg = fast_config();
    int tested = 0;
    while (tested < 12) {
        const Table a = rng.table2();
        const Table b = rng.table2();
        const ClassicalSolution classical = classical_nash_2x2(a, b);
        if (classical.degenerate || classical.equilibria.empty()) continue;
        ++tested;
        const NashResult r = nash_search(DiagonalGame(a, b),
                                         CoordinatorParams(0.0, 0.0), cfg);
        CHECK(payoffs_match_some_equilibrium(r, classical, 1e-5));
    }
}

TEST_CASE("a cycling game without good seeds reports non-convergence honestly") {
    // matching-pennies payoffs on the bare search core, with no deterministic
    // seeds: pure best responses chase each other forever
    const Table a{{1.0, -1.0}, {-1.0, 1.0}};
    const Table b{{-1.0, 1.0}, {1.0, -1.0}};
    SearchProblem prob;
    prob.chart_a = Chart{CoordSpec{0.0, kPi / 2.0, false, "t"},
                         CoordSpec{-kPi, kPi, true, "xi"}};
    prob.chart_b = prob.chart_a;
    const CoordinatorParams g(0.0, 0.0);
    const auto mix = [](double t) {
        return StrategyParams::from_mixing_angle(std::clamp(t, 0.0, kPi / 2.0), 0.0);
    };
    prob.payoff_a = [&a, g, mix](const Point2& pa, const Point2& pb) {
        return payoff_analytic(a, mix(pa[0]), mix(pb[0]), g).total;
    };
    prob.payoff_b = [&b, g, mix](const Point2& pa, const Point2& pb) {
        return payoff_analytic(b, mix(pa[0]), mix(pb[0]), g).total;
    };
    SearchConfig cfg;
    cfg.restarts = 2;
    cfg.refine_iters = 20;
    const SearchOutcome out = alternating_search(prob, cfg);
    CHECK_FALSE(out.converged);
    CHECK(out.residual > cfg.payoff_tol);
}

TEST_CASE("nash search is deterministic for a fixed seed") {
    const DiagonalGame pd(kPd, kPdPartner);
    SearchConfig cfg = fast_config();
    cfg.rng_seed = 987654321;
    const CoordinatorParams g(1.1, 0.4);
    const NashResult r1 = nash_search(pd, g, cfg);
    const NashResult r2 = nash_search(pd, g, cfg);
    CHECK(r1.a_star.a0 == r2.a_star.a0);
    CHECK(r1.a_star.a1 == r2.a_star.a1);
    CHECK(r1.a_star.phase == r2.a_star.phase);
    CHECK(r1.b_star.a0 == r2.b_star.a0);
    CHECK(r1.payoff_a == r2.payoff_a);
    CHECK(r1.payoff_b == r2.payoff_b);
    CHECK(r1.residual == r2.residual);
    CHECK(r1.restarts_agreeing == r2.restarts_agreeing);
}
