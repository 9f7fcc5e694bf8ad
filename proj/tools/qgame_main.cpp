// Command-line front end: evaluate payoffs and decompositions of diagonal
// quantum games, run Nash searches and parameter sweeps, and verify the
// Bell-game payoff surface. JSON goes to stdout for single evaluations, CSV
// for sweeps; diagnostics go to stderr.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 parse error,
// 3 dimension/validation error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qgame/bell.hpp"
#include "qgame/equilibrium.hpp"
#include "qgame/payoff.hpp"

using json = nlohmann::json;
using namespace qgame;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitValidationError = 3;

struct LoadedGame {
    DiagonalGame game;
    bool b_defaulted = false;
};

Table parse_table(const json& j, int n, const char* name) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) {
        throw InvalidParameter(std::string(name) + " must be an " + std::to_string(n) +
                               "x" + std::to_string(n) + " array");
    }
    Table t;
    for (const json& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) {
            throw DimensionMismatch(std::string(name) + " is not square");
        }
        std::vector<double> r;
        for (const json& v : row) {
            if (!v.is_number()) {
                throw InvalidParameter(std::string(name) + " has a non-numeric entry");
            }
            r.push_back(v.get<double>());
        }
        t.push_back(std::move(r));
    }
    return t;
}

LoadedGame load_game(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        // missing file is a parse-level failure
        throw json::parse_error::create(101, 0, "cannot open game file: " + path, nullptr);
    }
    const json j = json::parse(in);

    if (!j.contains("n") || !j["n"].is_number_integer()) {
        throw InvalidParameter("game file: integer field \"n\" is required");
    }
    const int n = j["n"].get<int>();
    if (n < 2) throw InvalidParameter("game file: n must be >= 2");
    if (!j.contains("A")) throw InvalidParameter("game file: table \"A\" is required");
    const Table a = parse_table(j["A"], n, "A");

    LoadedGame out{DiagonalGame(a, a), false};
    if (j.contains("B")) {
        out.game = DiagonalGame(a, parse_table(j["B"], n, "B"));
    } else {
        // default to the symmetric partner B = SAS, i.e. the transpose
        Table b(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) b[i][k] = a[k][i];
        out.game = DiagonalGame(a, b);
        out.b_defaulted = true;
    }
    return out;
}

void require_two_strategies(const DiagonalGame& game) {
    if (game.n != 2) {
        throw UnsupportedDimension("quantum commands require a two-strategy game (n = 2)");
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open output file: " + out_path);
    out << text;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json strategy_json(const StrategyParams& p) {
    return json{{"a0", p.a0}, {"a1", p.a1}, {"phase", p.phase}};
}

json gamma_json(const CoordinatorParams& g) {
    return json{{"gamma1", g.gamma1}, {"gamma2", g.gamma2}};
}

json breakdown_json(const PayoffBreakdown& p) {
    return json{{"total", p.total},
                {"pseudo_classical", p.pseudo_classical},
                {"interference", p.interference}};
}

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim(); ++c) {
            row.push_back(json::array({m.at(r, c).real(), m.at(r, c).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

// Shared flag values, filled by CLI11.
struct CommonArgs {
    std::string game_path;
    double gamma1 = 0.0, gamma2 = 0.0;
    double eta1 = 0.0, eta2 = 0.0;
    std::uint64_t seed = 12345;
    int grid = 24;
    int restarts = 16;
    std::string out_path;
    bool degrees = false;

    double angle(double v) const { return degrees ? v * kPi / 180.0 : v; }

    SearchConfig config() const {
        SearchConfig cfg;
        cfg.grid_density = grid;
        cfg.restarts = restarts;
        cfg.rng_seed = seed;
        cfg.validate();
        return cfg;
    }
};

int cmd_payoff(const CommonArgs& args, double a0, double a1, double aphase, double b0,
               double b1, double bphase) {
    const LoadedGame loaded = load_game(args.game_path);
    require_two_strategies(loaded.game);
    const CoordinatorParams gamma(args.angle(args.gamma1), args.angle(args.gamma2));
    const StrategyParams a(a0, a1, args.angle(aphase));
    const StrategyParams b(b0, b1, args.angle(bphase));

    const PayoffBreakdown pi_a = payoff(diagonal_operator(loaded.game.a), a, b, gamma);
    const PayoffBreakdown pi_b = payoff(diagonal_operator(loaded.game.b), a, b, gamma);

    const json out{{"game", json{{"n", loaded.game.n},
                                 {"b_defaulted", loaded.b_defaulted},
                                 {"symmetric", loaded.game.symmetric()}}},
                   {"gamma", gamma_json(gamma)},
                   {"a", strategy_json(a)},
                   {"b", strategy_json(b)},
                   {"pi_a", breakdown_json(pi_a)},
                   {"pi_b", breakdown_json(pi_b)}};
    emit(out.dump(2) + "\n", args.out_path);
    return 0;
}

int cmd_decompose(const CommonArgs& args) {
    const LoadedGame loaded = load_game(args.game_path);
    require_two_strategies(loaded.game);
    const CoordinatorParams gamma(args.angle(args.gamma1), args.angle(args.gamma2));
    const auto k = pc_coefficients(gamma);

    const auto player_json = [&](const Table& t) {
        const ComplexMatrix pc = pc_operator(t, gamma);
        json pc_diag = json::array();
        for (int s = 0; s < 4; ++s) pc_diag.push_back(pc.at(s, s).real());
        return json{{"pc_diag", pc_diag}, {"in_op", matrix_json(in_operator(t, gamma))}};
    };

    const json out{{"game", json{{"n", loaded.game.n},
                                 {"b_defaulted", loaded.b_defaulted}}},
                   {"gamma", gamma_json(gamma)},
                   {"pc_coefficients", json::array({k[0], k[1], k[2]})},
                   {"player_a", player_json(loaded.game.a)},
                   {"player_b", player_json(loaded.game.b)}};
    emit(out.dump(2) + "\n", args.out_path);
    return 0;
}

int cmd_nash(const CommonArgs& args) {
    const LoadedGame loaded = load_game(args.game_path);
    require_two_strategies(loaded.game);
    const CoordinatorParams gamma(args.angle(args.gamma1), args.angle(args.gamma2));
    const NashResult r = nash_search(loaded.game, gamma, args.config());

    const json out{{"game", json{{"n", loaded.game.n},
                                 {"b_defaulted", loaded.b_defaulted}}},
                   {"gamma", gamma_json(gamma)},
                   {"seed", args.seed},
                   {"a_star", strategy_json(r.a_star)},
                   {"b_star", strategy_json(r.b_star)},
                   {"payoff_a", r.payoff_a},
                   {"payoff_b", r.payoff_b},
                   {"residual", r.residual},
                   {"converged", r.converged},
                   {"restarts_agreeing", r.restarts_agreeing},
                   {"flat_directions", r.flat_directions}};
    emit(out.dump(2) + "\n", args.out_path);
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& axis, double start_raw,
              double stop_raw, int steps) {
    if (steps < 2 || steps > 1000000) {
        throw InvalidParameter("sweep: steps must lie in [2, 1000000]");
    }
    const double start = args.angle(start_raw);
    const double stop = args.angle(stop_raw);
    if (start > stop) throw InvalidParameter("sweep: start must be <= stop");

    const bool bell_axis = (axis == "eta1" || axis == "eta2");
    std::optional<LoadedGame> loaded;
    if (!bell_axis) {
        if (args.game_path.empty()) {
            throw InvalidParameter("sweep over " + axis + " requires --game");
        }
        loaded = load_game(args.game_path);
        require_two_strategies(loaded->game);
    }

    const SearchConfig cfg = args.config();
    std::ostringstream csv;
    csv << "axis,value,payoff_a,payoff_b,analytic,residual,converged\n";
    for (int i = 0; i < steps; ++i) {
        const double v = start + (stop - start) * static_cast<double>(i) / (steps - 1);
        if (bell_axis) {
            const double e1 = axis == "eta1" ? v : args.angle(args.eta1);
            const double e2 = axis == "eta2" ? v : args.angle(args.eta2);
            const BellNashReport r = bell_nash_search(SchmidtParams(e1, e2), cfg);
            csv << axis << ',' << csv_num(v) << ',' << csv_num(r.numeric) << ','
                << csv_num(r.numeric) << ',' << csv_num(r.analytic) << ','
                << csv_num(r.residual) << ',' << (r.converged ? 1 : 0) << '\n';
        } else {
            const double g1 = axis == "gamma1" ? v : args.angle(args.gamma1);
            const double g2 = axis == "gamma2" ? v : args.angle(args.gamma2);
            const NashResult r = nash_search(loaded->game, CoordinatorParams(g1, g2), cfg);
            csv << axis << ',' << csv_num(v) << ',' << csv_num(r.payoff_a) << ','
                << csv_num(r.payoff_b) << ",," << csv_num(r.residual) << ','
                << (r.converged ? 1 : 0) << '\n';
        }
    }
    emit(csv.str(), args.out_path);
    return 0;
}

int cmd_bell_verify(const CommonArgs& args, int eta_grid, long samples,
                    std::optional<double> eta1_raw, std::optional<double> eta2_raw) {
    if (eta_grid < 2) throw InvalidParameter("bell-verify: --eta-grid must be >= 2");
    if (samples < 1) throw InvalidParameter("bell-verify: --samples must be >= 1");
    const SearchConfig cfg = args.config();

    std::vector<SchmidtParams> points;
    if (eta1_raw.has_value() || eta2_raw.has_value()) {
        points.emplace_back(args.angle(eta1_raw.value_or(0.0)),
                            args.angle(eta2_raw.value_or(0.0)));
    } else {
        for (int i = 0; i < eta_grid; ++i) {
            for (int j = 0; j < eta_grid; ++j) {
                points.emplace_back(kPi * i / (eta_grid - 1),
                                    -kPi + 2.0 * kPi * j / (eta_grid - 1));
            }
        }
    }

    double max_gap = 0.0;
    bool all_flat = true;
    json failing = json::array();
    json grid_points = json::array();
    for (const SchmidtParams& eta : points) {
        const BellNashReport r = bell_nash_search(eta, cfg);
        max_gap = std::max(max_gap, r.gap);
        all_flat = all_flat && r.theta_flat_verified;
        if (points.size() == 1) {
            grid_points.push_back(json{{"eta1", eta.eta1},
                                       {"eta2", eta.eta2},
                                       {"numeric", r.numeric},
                                       {"analytic", r.analytic},
                                       {"gap", r.gap}});
        }
        if (r.gap >= 1e-5) {
            failing.push_back(
                json{{"eta1", eta.eta1}, {"eta2", eta.eta2}, {"gap", r.gap}});
        }
    }

    SplitMix64 rng(args.seed);
    const double tsirelson = 2.0 * std::numbers::sqrt2;
    double ceiling = -1e300;
    double ceiling_sep = -1e300;
    for (long i = 0; i < samples; ++i) {
        const Su2Params a(rng.next_in(-kPi, kPi), rng.next_in(-kPi, kPi));
        const Su2Params b(rng.next_in(-kPi, kPi), rng.next_in(-kPi, kPi));
        const SchmidtParams eta(rng.next_in(0.0, kPi), rng.next_in(-kPi, kPi));
        ceiling = std::max(ceiling, bell_payoff(a, b, eta));
        ceiling_sep =
            std::max(ceiling_sep, bell_payoff(a, b, SchmidtParams(0.0, eta.eta2)));
    }
    const bool ceiling_ok = ceiling <= tsirelson + 1e-9;
    const bool ceiling_sep_ok = ceiling_sep <= std::numbers::sqrt2 + 1e-9;
    const bool pass = max_gap < 1e-5 && ceiling_ok && ceiling_sep_ok;

    json out{{"points", points.size()},
             {"max_gap", max_gap},
             {"theta_flat_all", all_flat},
             {"failing_points", failing},
             {"samples", samples},
             {"tsirelson_ceiling", ceiling},
             {"tsirelson_ceiling_ok", ceiling_ok},
             {"unentangled_ceiling", ceiling_sep},
             {"unentangled_ceiling_ok", ceiling_sep_ok},
             {"pass", pass}};
    if (!grid_points.empty()) out["point_detail"] = grid_points;
    emit(out.dump(2) + "\n", args.out_path);
    return pass ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical engine for quantum games on two-qubit strategy spaces"};
    app.require_subcommand(1);

    CommonArgs args;
    const auto add_common = [&](CLI::App* cmd, bool with_game) {
        if (with_game) cmd->add_option("--game", args.game_path, "game file (JSON)");
        cmd->add_option("--gamma1", args.gamma1, "correlation angle gamma1 (radians)");
        cmd->add_option("--gamma2", args.gamma2, "correlation angle gamma2 (radians)");
        cmd->add_option("--eta1", args.eta1, "entanglement magnitude eta1 (radians)");
        cmd->add_option("--eta2", args.eta2, "entanglement phase eta2 (radians)");
        cmd->add_option("--seed", args.seed, "search RNG seed");
        cmd->add_option("--grid", args.grid, "search grid density per angle");
        cmd->add_option("--restarts", args.restarts, "random restarts");
        cmd->add_option("--out", args.out_path, "write output to a file instead of stdout");
        cmd->add_flag("--degrees", args.degrees, "interpret input angles as degrees");
    };

    // payoff
    double a0 = 1.0, a1 = 0.0, aphase = 0.0;
    double b0 = 1.0, b1 = 0.0, bphase = 0.0;
    CLI::App* payoff_cmd =
        app.add_subcommand("payoff", "evaluate both players' payoff breakdowns");
    add_common(payoff_cmd, true);
    payoff_cmd->get_option("--game")->required();
    payoff_cmd->add_option("--a0", a0, "player A amplitude on strategy 0")->required();
    payoff_cmd->add_option("--a1", a1, "player A amplitude on strategy 1")->required();
    payoff_cmd->add_option("--aphase", aphase, "player A relative phase xi");
    payoff_cmd->add_option("--b0", b0, "player B amplitude on strategy 0")->required();
    payoff_cmd->add_option("--b1", b1, "player B amplitude on strategy 1")->required();
    payoff_cmd->add_option("--bphase", bphase, "player B relative phase chi");

    // decompose
    CLI::App* decompose_cmd = app.add_subcommand(
        "decompose", "emit pseudo-classical diagonals, interference operators and "
                     "the pc mixing coefficients");
    add_common(decompose_cmd, true);
    decompose_cmd->get_option("--game")->required();

    // nash
    CLI::App* nash_cmd =
        app.add_subcommand("nash", "alternating best-response equilibrium search");
    add_common(nash_cmd, true);
    nash_cmd->get_option("--game")->required();

    // sweep
    std::string axis;
    double start = 0.0, stop = 0.0;
    int steps = 11;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "CSV sweep of Nash payoffs along one parameter axis");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--axis", axis, "gamma1 | gamma2 | eta1 | eta2")
        ->required()
        ->check(CLI::IsMember({"gamma1", "gamma2", "eta1", "eta2"}));
    sweep_cmd->add_option("--start", start, "first swept value")->required();
    sweep_cmd->add_option("--stop", stop, "last swept value")->required();
    sweep_cmd->add_option("--steps", steps, "number of grid points (inclusive)");

    // bell-verify
    int eta_grid = 11;
    long samples = 100000;
    std::optional<double> point_eta1, point_eta2;
    CLI::App* verify_cmd = app.add_subcommand(
        "bell-verify", "compare the numeric Bell Nash payoff against the closed form");
    verify_cmd->add_option("--eta1", point_eta1, "verify a single point: eta1");
    verify_cmd->add_option("--eta2", point_eta2, "verify a single point: eta2");
    verify_cmd->add_option("--eta-grid", eta_grid, "eta lattice size per axis");
    verify_cmd->add_option("--samples", samples, "random draws for the payoff ceilings");
    verify_cmd->add_option("--seed", args.seed, "search RNG seed");
    verify_cmd->add_option("--grid", args.grid, "search grid density per angle");
    verify_cmd->add_option("--restarts", args.restarts, "random restarts");
    verify_cmd->add_option("--out", args.out_path, "write output to a file");
    verify_cmd->add_flag("--degrees", args.degrees, "interpret input angles as degrees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParseError;
    }

    try {
        if (payoff_cmd->parsed()) return cmd_payoff(args, a0, a1, aphase, b0, b1, bphase);
        if (decompose_cmd->parsed()) return cmd_decompose(args);
        if (nash_cmd->parsed()) return cmd_nash(args);
        if (sweep_cmd->parsed()) return cmd_sweep(args, axis, start, stop, steps);
        if (verify_cmd->parsed())
            return cmd_bell_verify(args, eta_grid, samples, point_eta1, point_eta2);
    } catch (const json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationError;
    }
    return 0;
}
