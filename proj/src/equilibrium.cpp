#include "qgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace qgame {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kFlatCurvatureTol = 1e-7;
constexpr double kFlatProbeStep = 1e-3;
constexpr double kAgreementTol = 1e-6;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Golden-section maximization on [lo, hi], keeping the incumbent if nothing
// better turns up. Returns (x, f(x)) of the best point seen.
struct Probe {
    double x;
    double value;
};

Probe golden_max(const std::function<double(double)>& f, double lo, double hi,
                 Probe incumbent, double step_tol) {
    Probe best = incumbent;
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    if (f1 > best.value) best = {x1, f1};
    if (f2 > best.value) best = {x2, f2};
    while (b - a > step_tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
            if (f2 > best.value) best = {x2, f2};
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
            if (f1 > best.value) best = {x1, f1};
        }
    }
    return best;
}

double wrap_into(double x, const CoordSpec& spec) {
    if (!spec.periodic) return clamp(x, spec.lo, spec.hi);
    const double period = spec.hi - spec.lo;
    double y = std::fmod(x - spec.lo, period);
    if (y < 0.0) y += period;
    return spec.lo + y;
}

// grid coordinate i of `density` points, inclusive of both ends
double grid_point(const CoordSpec& spec, int i, int density) {
    return spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) / (density - 1);
}

struct OwnPayoff {
    const PayoffFn& fn;
    bool optimize_a;
    const Profile& current;

    double operator()(const Point2& own) const {
        return optimize_a ? fn(own, current.b) : fn(current.a, own);
    }
};

}  // namespace

void SearchConfig::validate() const {
    if (grid_density < 4) throw InvalidParameter("SearchConfig: grid_density must be >= 4");
    if (restarts < 1) throw InvalidParameter("SearchConfig: restarts must be >= 1");
    if (refine_iters < 1) throw InvalidParameter("SearchConfig: refine_iters must be >= 1");
    if (!(step_tol > 0.0) || !(payoff_tol > 0.0)) {
        throw InvalidParameter("SearchConfig: tolerances must be positive");
    }
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
}

Point2 best_response(const PayoffFn& own_payoff, bool optimize_a,
                     const Profile& current, const Chart& own_chart,
                     const SearchConfig& cfg, double* best_value) {
    const OwnPayoff f{own_payoff, optimize_a, current};
    const int density = cfg.grid_density;

    // coarse scan; iteration order makes ties resolve to the
    // lexicographically smallest grid point
    Point2 best_pt{own_chart[0].lo, own_chart[1].lo};
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < density; ++i) {
        const double c0 = grid_point(own_chart[0], i, density);
        for (int j = 0; j < density; ++j) {
            const double c1 = grid_point(own_chart[1], j, density);
            const double v = f({c0, c1});
            if (v > best) {
                best = v;
                best_pt = {c0, c1};
            }
        }
    }

    // coordinate-wise golden-section refinement within one grid cell of the
    // best scan point; periodic coordinates may leave the chart and are
    // wrapped at the end
    const double span0 = (own_chart[0].hi - own_chart[0].lo) / (density - 1);
    const double span1 = (own_chart[1].hi - own_chart[1].lo) / (density - 1);
    const auto refine_coord = [&](int c, double span) {
        double lo = best_pt[c] - span, hi = best_pt[c] + span;
        if (!own_chart[c].periodic) {
            lo = clamp(lo, own_chart[c].lo, own_chart[c].hi);
            hi = clamp(hi, own_chart[c].lo, own_chart[c].hi);
        }
        const Probe r = golden_max(
            [&](double x) {
                Point2 pt = best_pt;
                pt[c] = x;
                return f(pt);
            },
            lo, hi, Probe{best_pt[c], best}, cfg.step_tol);
        best_pt[c] = r.x;
        best = r.value;
    };
    for (int pass = 0; pass < 40; ++pass) {
        const double before = best;
        refine_coord(0, span0);
        refine_coord(1, span1);
        if (best - before <= 1e-14) break;
    }

    best_pt[0] = wrap_into(best_pt[0], own_chart[0]);
    best_pt[1] = wrap_into(best_pt[1], own_chart[1]);
    if (best_value != nullptr) *best_value = f(best_pt);
    return best_pt;
}

double profile_residual(const SearchProblem& prob, const Profile& p,
                        const SearchConfig& cfg, double eps) {
    if (!(eps > 0.0)) throw InvalidParameter("profile_residual: eps must be positive");
    double residual = 0.0;

    for (int player = 0; player < 2; ++player) {
        const bool is_a = (player == 0);
        const PayoffFn& fn = is_a ? prob.payoff_a : prob.payoff_b;
        const Chart& chart = is_a ? prob.chart_a : prob.chart_b;
        const Point2& own = is_a ? p.a : p.b;
        const auto value_at = [&](const Point2& pt) {
            return is_a ? fn(pt, p.b) : fn(p.a, pt);
        };
        const double here = value_at(own);

        // (i) ascent gradient, counting only directions feasible in the chart
        double grad_sq = 0.0;
        for (int c = 0; c < 2; ++c) {
            const CoordSpec& spec = chart[c];
            Point2 plus = own, minus = own;
            plus[c] += eps;
            minus[c] -= eps;
            const bool can_up = spec.periodic || plus[c] <= spec.hi;
            const bool can_down = spec.periodic || minus[c] >= spec.lo;
            double ascent = 0.0;
            if (can_up && can_down) {
                ascent = std::abs((value_at(plus) - value_at(minus)) / (2.0 * eps));
            } else if (can_up) {
                ascent = std::max(0.0, (value_at(plus) - here) / eps);
            } else if (can_down) {
                ascent = std::max(0.0, (value_at(minus) - here) / eps);
            }
            grad_sq += ascent * ascent;
        }
        residual = std::max(residual, std::sqrt(grad_sq));

        // (ii) best improvement from a fresh unilateral grid sweep
        double sweep_best = here;
        for (int i = 0; i < cfg.grid_density; ++i) {
            const double c0 = grid_point(chart[0], i, cfg.grid_density);
            for (int j = 0; j < cfg.grid_density; ++j) {
                const double c1 = grid_point(chart[1], j, cfg.grid_density);
                sweep_best = std::max(sweep_best, value_at({c0, c1}));
            }
        }
        residual = std::max(residual, sweep_best - here);
    }
    return residual;
}

namespace {

std::vector<std::string> flat_directions_at(const SearchProblem& prob, const Profile& p) {
    std::vector<std::string> flats;
    for (int player = 0; player < 2; ++player) {
        const bool is_a = (player == 0);
        const PayoffFn& fn = is_a ? prob.payoff_a : prob.payoff_b;
        const Chart& chart = is_a ? prob.chart_a : prob.chart_b;
        const Point2& own = is_a ? p.a : p.b;
        const auto value_at = [&](const Point2& pt) {
            return is_a ? fn(pt, p.b) : fn(p.a, pt);
        };
        for (int c = 0; c < 2; ++c) {
            const double h = kFlatProbeStep;
            Point2 plus = own, minus = own;
            plus[c] += h;
            minus[c] -= h;
            // near a chart edge probe one-sided; curvature is what matters
            if (!chart[c].periodic) {
                if (plus[c] > chart[c].hi) {
                    plus[c] = own[c] - h;
                    minus[c] = own[c] - 2.0 * h;
                } else if (minus[c] < chart[c].lo) {
                    plus[c] = own[c] + 2.0 * h;
                    minus[c] = own[c] + h;
                }
            }
            const double mid = (plus[c] + minus[c]) / 2.0;
            Point2 center = own;
            center[c] = mid;
            const double second =
                (value_at(plus) - 2.0 * value_at(center) + value_at(minus)) / (h * h);
            if (std::abs(second) < kFlatCurvatureTol) {
                flats.push_back(std::string(player == 0 ? "a." : "b.") + chart[c].name);
            }
        }
    }
    return flats;
}

struct RestartResult {
    Profile profile;
    double payoff_a = 0.0;
    double payoff_b = 0.0;
    double residual = 0.0;
    bool round_converged = false;
};

RestartResult run_restart(const SearchProblem& prob, Profile start,
                          const SearchConfig& cfg) {
    Profile cur = start;
    double pay_a = prob.payoff_a(cur.a, cur.b);
    double pay_b = prob.payoff_b(cur.a, cur.b);
    bool converged = false;

    for (int round = 0; round < cfg.refine_iters; ++round) {
        double improvement = 0.0;

        double best_a = 0.0;
        const Point2 cand_a = best_response(prob.payoff_a, true, cur, prob.chart_a,
                                            cfg, &best_a);
        if (best_a - pay_a > cfg.payoff_tol) {
            improvement = std::max(improvement, best_a - pay_a);
            cur.a = cand_a;
            pay_a = best_a;
            pay_b = prob.payoff_b(cur.a, cur.b);
        }

        double best_b = 0.0;
        const Point2 cand_b = best_response(prob.payoff_b, false, cur, prob.chart_b,
                                            cfg, &best_b);
        if (best_b - pay_b > cfg.payoff_tol) {
            improvement = std::max(improvement, best_b - pay_b);
            cur.b = cand_b;
            pay_b = best_b;
            pay_a = prob.payoff_a(cur.a, cur.b);
        }

        if (improvement <= cfg.payoff_tol) {
            converged = true;
            break;
        }
    }

    RestartResult out;
    out.profile = cur;
    out.payoff_a = prob.payoff_a(cur.a, cur.b);
    out.payoff_b = prob.payoff_b(cur.a, cur.b);
    out.residual = profile_residual(prob, cur, cfg);
    out.round_converged = converged;
    return out;
}

bool profile_less(const Profile& lhs, const Profile& rhs) {
    const std::array<double, 4> l{lhs.a[0], lhs.a[1], lhs.b[0], lhs.b[1]};
    const std::array<double, 4> r{rhs.a[0], rhs.a[1], rhs.b[0], rhs.b[1]};
    return l < r;
}

}  // namespace

SearchOutcome alternating_search(const SearchProblem& prob, const SearchConfig& cfg) {
    cfg.validate();

    std::vector<Profile> starts = prob.seeds;
    for (int r = 0; r < cfg.restarts; ++r) {
        // private stream per restart index keeps the result independent of
        // evaluation order
        SplitMix64 rng(cfg.rng_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(r) + 1));
        Profile p;
        p.a = {rng.next_in(prob.chart_a[0].lo, prob.chart_a[0].hi),
               rng.next_in(prob.chart_a[1].lo, prob.chart_a[1].hi)};
        p.b = {rng.next_in(prob.chart_b[0].lo, prob.chart_b[0].hi),
               rng.next_in(prob.chart_b[1].lo, prob.chart_b[1].hi)};
        starts.push_back(p);
    }

    std::vector<RestartResult> results;
    results.reserve(starts.size());
    for (const Profile& s : starts) results.push_back(run_restart(prob, s, cfg));

    // A residual at or below payoff_tol certifies a numerical equilibrium.
    // Certified results are interchangeable certificates, so the
    // lexicographically smallest profile among them is reported; otherwise
    // the smallest residual wins.
    const RestartResult* winner = &results.front();
    for (const RestartResult& r : results) {
        const bool r_cert = r.residual <= cfg.payoff_tol;
        const bool w_cert = winner->residual <= cfg.payoff_tol;
        if (r_cert != w_cert) {
            if (r_cert) winner = &r;
            continue;
        }
        if (r_cert) {
            if (profile_less(r.profile, winner->profile)) winner = &r;
        } else if (r.residual < winner->residual ||
                   (r.residual == winner->residual &&
                    profile_less(r.profile, winner->profile))) {
            winner = &r;
        }
    }

    SearchOutcome out;
    out.profile = winner->profile;
    out.payoff_a = winner->payoff_a;
    out.payoff_b = winner->payoff_b;
    out.residual = winner->residual;
    out.converged = winner->round_converged && winner->residual <= cfg.payoff_tol;
    for (const RestartResult& r : results) {
        if (std::abs(r.payoff_a - winner->payoff_a) <= kAgreementTol &&
            std::abs(r.payoff_b - winner->payoff_b) <= kAgreementTol) {
            ++out.restarts_agreeing;
        }
    }
    out.flat_directions = flat_directions_at(prob, winner->profile);
    return out;
}

// ---------------------------------------------------------------------------
// Diagonal-game front end
// ---------------------------------------------------------------------------

namespace {

Chart strategy_chart() {
    return Chart{CoordSpec{0.0, kPi / 2.0, false, "t"},
                 CoordSpec{-kPi, kPi, true, "xi"}};
}

StrategyParams params_from_point(const Point2& pt) {
    // refinement arithmetic may overshoot the chart edge by an ulp
    return StrategyParams::from_mixing_angle(clamp(pt[0], 0.0, kPi / 2.0),
                                             wrap_angle(pt[1]));
}

Point2 point_from_params(const StrategyParams& p) {
    double xi = p.phase;
    if (p.a0 == 0.0 || p.a1 == 0.0) xi = 0.0;
    return {p.mixing_angle(), xi};
}

SearchProblem diagonal_problem(const DiagonalGame& game, const CoordinatorParams& gamma) {
    SearchProblem prob;
    prob.chart_a = strategy_chart();
    prob.chart_b = strategy_chart();
    const Table a_table = game.a;
    const Table b_table = game.b;
    prob.payoff_a = [a_table, gamma](const Point2& a, const Point2& b) {
        return payoff_analytic(a_table, params_from_point(a), params_from_point(b), gamma)
            .total;
    };
    prob.payoff_b = [b_table, gamma](const Point2& a, const Point2& b) {
        return payoff_analytic(b_table, params_from_point(a), params_from_point(b), gamma)
            .total;
    };

    // Deterministic seeds: the chart origin plus classical equilibria of the
    // pseudo-classical family member at this gamma. The classical candidates
    // are what lets the alternation settle on mixed equilibria, which pure
    // best-response cycling never reaches on its own.
    prob.seeds.push_back(Profile{{0.0, 0.0}, {0.0, 0.0}});
    Table pc_a(2, std::vector<double>(2, 0.0));
    Table pc_b = pc_a;
    const ComplexMatrix op_a = pc_operator(game.a, gamma);
    const ComplexMatrix op_b = pc_operator(game.b, gamma);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            pc_a[i][j] = op_a.at(i * 2 + j, i * 2 + j).real();
            pc_b[i][j] = op_b.at(i * 2 + j, i * 2 + j).real();
        }
    }
    const ClassicalSolution classical = classical_nash_2x2(pc_a, pc_b);
    for (const ClassicalEquilibrium& eq : classical.equilibria) {
        Profile p;
        p.a = {std::acos(std::sqrt(clamp(eq.x[0], 0.0, 1.0))), 0.0};
        p.b = {std::acos(std::sqrt(clamp(eq.y[0], 0.0, 1.0))), 0.0};
        prob.seeds.push_back(p);
    }
    return prob;
}

}  // namespace

StrategyParams best_response_a(const DiagonalGame& game, const StrategyParams& b,
                               const CoordinatorParams& gamma, const SearchConfig& cfg) {
    cfg.validate();
    const SearchProblem prob = diagonal_problem(game, gamma);
    Profile cur;
    cur.b = point_from_params(b);
    return params_from_point(
        best_response(prob.payoff_a, true, cur, prob.chart_a, cfg));
}

StrategyParams best_response_b(const DiagonalGame& game, const StrategyParams& a,
                               const CoordinatorParams& gamma, const SearchConfig& cfg) {
    cfg.validate();
    const SearchProblem prob = diagonal_problem(game, gamma);
    Profile cur;
    cur.a = point_from_params(a);
    return params_from_point(
        best_response(prob.payoff_b, false, cur, prob.chart_b, cfg));
}

NashResult nash_search(const DiagonalGame& game, const CoordinatorParams& gamma,
                       const SearchConfig& cfg) {
    const SearchProblem prob = diagonal_problem(game, gamma);
    const SearchOutcome outcome = alternating_search(prob, cfg);

    NashResult out;
    out.a_star = params_from_point(outcome.profile.a);
    out.b_star = params_from_point(outcome.profile.b);
    out.payoff_a = outcome.payoff_a;
    out.payoff_b = outcome.payoff_b;
    out.residual = outcome.residual;
    out.converged = outcome.converged;
    out.restarts_agreeing = outcome.restarts_agreeing;
    out.flat_directions = outcome.flat_directions;
    return out;
}

double verify_nash(const DiagonalGame& game, const StrategyParams& a,
                   const StrategyParams& b, const CoordinatorParams& gamma,
                   const SearchConfig& cfg, double eps) {
    cfg.validate();
    const SearchProblem prob = diagonal_problem(game, gamma);
    Profile p;
    p.a = point_from_params(a);
    p.b = point_from_params(b);
    return profile_residual(prob, p, cfg, eps);
}

ClassicalSolution classical_nash_2x2(const Table& a_table, const Table& b_table) {
    if (a_table.size() != 2 || b_table.size() != 2 || a_table[0].size() != 2 ||
        a_table[1].size() != 2 || b_table[0].size() != 2 || b_table[1].size() != 2) {
        throw DimensionMismatch("classical_nash_2x2: 2x2 tables required");
    }

    ClassicalSolution out;
    const auto add_equilibrium = [&](std::vector<double> x, std::vector<double> y,
                                     EquilibriumKind kind) {
        ClassicalEquilibrium eq;
        eq.payoff_a = classical_payoff(a_table, x, y);
        eq.payoff_b = classical_payoff(b_table, x, y);
        eq.x = std::move(x);
        eq.y = std::move(y);
        eq.kind = kind;
        for (const ClassicalEquilibrium& seen : out.equilibria) {
            if (std::abs(seen.x[0] - eq.x[0]) < 1e-12 &&
                std::abs(seen.y[0] - eq.y[0]) < 1e-12) {
                return;
            }
        }
        out.equilibria.push_back(std::move(eq));
    };

    // pure profiles, in lexicographic (i, j) order
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const bool a_best = a_table[i][j] >= a_table[1 - i][j];
            const bool b_best = b_table[i][j] >= b_table[i][1 - j];
            if (a_best && b_best) {
                add_equilibrium({i == 0 ? 1.0 : 0.0, i == 0 ? 0.0 : 1.0},
                                {j == 0 ? 1.0 : 0.0, j == 0 ? 0.0 : 1.0},
                                EquilibriumKind::pure);
            }
        }
    }

    // interior mixed candidate: y makes A indifferent across rows, x makes B
    // indifferent across columns
    const double den_y = (a_table[0][0] - a_table[1][0]) + (a_table[1][1] - a_table[0][1]);
    const double den_x = (b_table[0][0] - b_table[0][1]) + (b_table[1][1] - b_table[1][0]);
    if (std::abs(den_y) < 1e-12 || std::abs(den_x) < 1e-12) {
        out.degenerate = true;
    } else {
        const double y0 = (a_table[1][1] - a_table[0][1]) / den_y;
        const double x0 = (b_table[1][1] - b_table[1][0]) / den_x;
        if (x0 >= 0.0 && x0 <= 1.0 && y0 >= 0.0 && y0 <= 1.0) {
            add_equilibrium({x0, 1.0 - x0}, {y0, 1.0 - y0}, EquilibriumKind::mixed);
        }
    }
    return out;
}

}  // namespace qgame
