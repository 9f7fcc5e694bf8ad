// Acceptance suite: one pass/fail line per criterion, exit code 0 only if
// every criterion holds at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "qgame/bell.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/payoff.hpp"

using namespace qgame;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;
const double kTsirelson = 2.0 * std::numbers::sqrt2;

int failures = 0;

void report(int id, const char* label, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, label,
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// integer-valued random table; keeps double arithmetic exact where the
// criteria demand exact equality
Table integer_table(oracle::Rng& rng) {
    Table t(2, std::vector<double>(2, 0.0));
    for (auto& row : t)
        for (double& v : row) v = std::floor(rng.uniform(-9.0, 10.0));
    return t;
}

void criterion_1_tsirelson() {
    const auto t0 = std::chrono::steady_clock::now();
    SearchConfig cfg;
    const BellNashReport r = bell_nash_search(SchmidtParams(kPi / 2.0, 0.0), cfg);
    const double elapsed = seconds_since(t0);
    const bool ok = std::abs(r.numeric - kTsirelson) < 1e-5 && elapsed < 5.0;
    report(1, "Tsirelson bound at eta = (pi/2, 0)", ok,
           fmt("payoff %.9f, runtime %.2f s", r.numeric, elapsed));
}

void criterion_2_unentangled() {
    SearchConfig cfg;
    const BellNashReport r = bell_nash_search(SchmidtParams(0.0, 0.0), cfg);
    const BellNashReport r2 = bell_nash_search(SchmidtParams(0.0, 1.7), cfg);
    const bool numeric_ok =
        std::abs(r.numeric - kSqrt2) < 1e-5 && std::abs(r2.numeric - kSqrt2) < 1e-5;

    oracle::Rng rng(41);
    double ceiling = -1e300;
    for (int i = 0; i < 100000; ++i) {
        const Su2Params a(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const Su2Params b(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        ceiling = std::max(ceiling, bell_payoff(a, b, SchmidtParams(0.0, 0.0)));
    }
    const bool ceiling_ok = ceiling <= kSqrt2 + 1e-9;
    report(2, "unentangled maximum sqrt(2)", numeric_ok && ceiling_ok,
           fmt("payoff %.9f, sampled ceiling %.9f", r.numeric, ceiling));
}

void criterion_3_nash_surface() {
    const auto t0 = std::chrono::steady_clock::now();
    SearchConfig cfg;
    double max_gap = 0.0;
    for (int ei = 0; ei < 11; ++ei) {
        for (int ej = 0; ej < 11; ++ej) {
            const SchmidtParams eta(kPi * ei / 10.0, -kPi + 2.0 * kPi * ej / 10.0);
            const BellNashReport r = bell_nash_search(eta, cfg);
            max_gap = std::max(max_gap, r.gap);
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = max_gap < 1e-5 && elapsed < 120.0;
    report(3, "closed-form Nash surface on the 11x11 eta grid", ok,
           fmt("max gap %.3e, runtime %.1f s", max_gap, elapsed));
}

void criterion_4_classical_reduction() {
    oracle::Rng rng(43);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Table a = rng.table2();
        const StrategyParams pa = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const StrategyParams pb = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const double quantum =
            payoff(diagonal_operator(a), pa, pb, CoordinatorParams(0.0, 0.0)).total;
        const double classical = classical_payoff(
            a, {pa.a0 * pa.a0, pa.a1 * pa.a1}, {pb.a0 * pb.a0, pb.a1 * pb.a1});
        worst = std::max(worst, std::abs(quantum - classical));
    }
    report(4, "classical reduction at gamma = 0", worst < 1e-12,
           fmt("max |quantum - classical| = %.3e", worst));
}

void criterion_5_decomposition() {
    oracle::Rng rng(47);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Table a = rng.table2();
        const CoordinatorParams g(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const ComplexMatrix whole = correlated_operator(diagonal_operator(a), g);
        const ComplexMatrix split = add(pc_operator(a, g), in_operator(a, g));
        worst = std::max(worst, oracle::max_abs_diff(whole, split));
    }
    report(5, "decomposition J'AJ = pc + in", worst < 1e-12,
           fmt("max entry error %.3e", worst));
}

void criterion_6_dihedral() {
    const ComplexMatrix s = swap_operator(2);
    const ComplexMatrix c = convert_operator(2);
    const ComplexMatrix t = twist_operator(2);
    const ComplexMatrix id = ComplexMatrix::identity(4);
    double worst = 0.0;
    worst = std::max(worst, oracle::max_abs_diff(matmul(s, s), id));
    worst = std::max(worst, oracle::max_abs_diff(matmul(c, c), id));
    worst = std::max(worst, oracle::max_abs_diff(matmul(t, t), id));
    worst = std::max(worst, oracle::max_abs_diff(t, matmul(s, c)));
    worst = std::max(worst, oracle::max_abs_diff(s, matmul(c, t)));
    worst = std::max(worst, oracle::max_abs_diff(c, matmul(t, s)));
    worst = std::max(worst, oracle::max_abs_diff(sub(add(s, t), c), id));
    report(6, "D2 algebra exact on integer entries", worst == 0.0,
           fmt("max deviation %.1f", worst));
}

void criterion_7_analytic_formula() {
    oracle::Rng rng(53);
    double worst = 0.0;
    double worst_in = 0.0;
    for (int i = 0; i < 500; ++i) {
        const Table a = rng.table2();
        const CoordinatorParams g(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const StrategyParams pa = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const StrategyParams pb = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const PayoffBreakdown matrix = payoff(diagonal_operator(a), pa, pb, g);
        const PayoffBreakdown closed = payoff_analytic(a, pa, pb, g);
        worst = std::max(worst, std::abs(matrix.total - closed.total));

        const StrategyParams za = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), 0.0);
        const StrategyParams zb = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), 0.0);
        worst_in = std::max(worst_in, std::abs(payoff_analytic(a, za, zb, g).interference));
        worst_in = std::max(
            worst_in, std::abs(payoff(diagonal_operator(a), za, zb, g).interference));
    }
    report(7, "analytic payoff formula vs matrix path", worst < 1e-10 && worst_in == 0.0,
           fmt("max gap %.3e, max zero-phase interference %.1e", worst, worst_in));
}

void criterion_8_altruism() {
    oracle::Rng rng(59);
    double worst_pc = 0.0;
    double worst_mid = 0.0;
    for (int i = 0; i < 100; ++i) {
        // continuous tables for the 1e-12 clause
        const Table a = rng.table2();
        const Table b{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}};
        const double g1 = rng.uniform(-kPi, kPi);
        const ComplexMatrix pc = pc_operator(a, CoordinatorParams(g1, 0.0));
        const double c = half_cos_sq(g1), s = 1.0 - c;
        for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 2; ++col) {
                const double want = c * a[r][col] + s * b[r][col];
                worst_pc = std::max(
                    worst_pc, std::abs(pc.at(r * 2 + col, r * 2 + col).real() - want));
            }
        }

        // integer tables for the exact midpoint clause
        const Table ia = integer_table(rng);
        const Table ib{{ia[0][0], ia[1][0]}, {ia[0][1], ia[1][1]}};
        const auto mid = altruism_mixture(DiagonalGame(ia, ib), kPi / 2.0);
        for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 2; ++col) {
                const double mean = (ia[r][col] + ib[r][col]) / 2.0;
                worst_mid = std::max(worst_mid, std::abs(mid.first[r][col] - mean));
                worst_mid = std::max(worst_mid, std::abs(mid.second[r][col] - mean));
            }
        }
    }
    report(8, "altruism family of symmetric games", worst_pc < 1e-12 && worst_mid == 0.0,
           fmt("pc error %.3e, midpoint error %.1e", worst_pc, worst_mid));
}

void criterion_9_fairness() {
    oracle::Rng rng(61);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Table a = rng.table2();
        const Table b{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}};
        const CoordinatorParams g(rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const StrategyParams pa = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const StrategyParams pb = StrategyParams::from_mixing_angle(
            rng.uniform(0.0, kPi / 2.0), rng.uniform(-kPi, kPi));
        const double pi_a = payoff(diagonal_operator(a), pa, pb, g).total;
        const double pi_b = payoff(diagonal_operator(b), pb, pa, g).total;
        worst = std::max(worst, std::abs(pi_a - pi_b));
    }
    report(9, "symmetric games are fair to both parties", worst < 1e-10,
           fmt("max |Pi_A(a,b) - Pi_B(b,a)| = %.3e", worst));
}

void criterion_10_gamma0_oracle() {
    oracle::Rng rng(67);
    SearchConfig cfg;
    int tested = 0;
    int matched = 0;
    while (tested < 50) {
        const Table a = rng.table2();
        const Table b = rng.table2();
        const ClassicalSolution classical = classical_nash_2x2(a, b);
        if (classical.degenerate || classical.equilibria.empty()) continue;
        ++tested;
        const NashResult r =
            nash_search(DiagonalGame(a, b), CoordinatorParams(0.0, 0.0), cfg);
        for (const ClassicalEquilibrium& eq : classical.equilibria) {
            if (std::abs(r.payoff_a - eq.payoff_a) < 1e-5 &&
                std::abs(r.payoff_b - eq.payoff_b) < 1e-5) {
                ++matched;
                break;
            }
        }
    }
    report(10, "gamma = 0 search matches the classical oracle", matched == tested,
           fmt("%.0f of %.0f games matched", static_cast<double>(matched),
               static_cast<double>(tested)));
}

}  // namespace

int main() {
    criterion_1_tsirelson();
    criterion_2_unentangled();
    criterion_3_nash_surface();
    criterion_4_classical_reduction();
    criterion_5_decomposition();
    criterion_6_dihedral();
    criterion_7_analytic_formula();
    criterion_8_altruism();
    criterion_9_fairness();
    criterion_10_gamma0_oracle();

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
