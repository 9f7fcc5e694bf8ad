#include "qgame/payoff.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgame {

namespace {

void check_table(const Table& t, const char* what) {
    const size_t n = t.size();
    if (n < 2) throw InvalidParameter(std::string(what) + ": table must be at least 2x2");
    for (const auto& row : t) {
        if (row.size() != n) throw DimensionMismatch(std::string(what) + ": table not square");
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw InvalidParameter(std::string(what) + ": non-finite table entry");
            }
        }
    }
}

void require_2x2(const Table& t, const char* what) {
    check_table(t, what);
    if (t.size() != 2) {
        throw UnsupportedDimension(std::string(what) + ": two-strategy tables only");
    }
}

// conjugated tables: (SAS)_ij = A_ji, (CAC)_ij = A_{i~ j~}, (TAT)_ij = A_{j~ i~}
double sas_entry(const Table& a, int i, int j) { return a[j][i]; }
double cac_entry(const Table& a, int i, int j) {
    const int n = static_cast<int>(a.size());
    return a[n - 1 - i][n - 1 - j];
}

}  // namespace

DiagonalGame::DiagonalGame(Table a_table, Table b_table)
    : a(std::move(a_table)), b(std::move(b_table)) {
    check_table(a, "DiagonalGame");
    check_table(b, "DiagonalGame");
    if (a.size() != b.size()) {
        throw DimensionMismatch("DiagonalGame: A and B have different sizes");
    }
    n = static_cast<int>(a.size());
}

bool DiagonalGame::symmetric(double tol) const {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::abs(b[i][j] - a[j][i]) > tol) return false;
        }
    }
    return true;
}

bool DiagonalGame::t_symmetric(double tol) const {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::abs(b[i][j] - a[n - 1 - j][n - 1 - i]) > tol) return false;
        }
    }
    return true;
}

StrategyParams::StrategyParams(double a0_in, double a1_in, double phase_in)
    : a0(a0_in), a1(a1_in), phase(wrap_angle(phase_in)) {
    if (!std::isfinite(a0) || !std::isfinite(a1) || a0 < 0.0 || a1 < 0.0) {
        throw InvalidParameter("StrategyParams: amplitudes must be finite and >= 0");
    }
    if (std::abs(a0 * a0 + a1 * a1 - 1.0) > NORM_TOL) {
        throw InvalidParameter("StrategyParams: a0^2 + a1^2 must equal 1");
    }
}

StrategyParams StrategyParams::from_amplitudes(Cx c0, Cx c1) {
    const double m0 = std::abs(c0);
    const double m1 = std::abs(c1);
    // the phase is the relative one; a vanished amplitude leaves it
    // unphysical, so pin it to zero
    double rel = 0.0;
    if (m0 > 0.0 && m1 > 0.0) rel = std::arg(c1) - std::arg(c0);
    return StrategyParams(m0, m1, m0 > 0.0 && m1 > 0.0 ? rel : 0.0);
}

StrategyParams StrategyParams::from_mixing_angle(double t, double xi) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    if (c < 0.0 || s < 0.0) {
        throw InvalidParameter("StrategyParams: mixing angle must lie in [0, pi/2]");
    }
    // at a pure strategy the phase carries no information
    if (c == 0.0 || s == 0.0) xi = 0.0;
    return StrategyParams(c, s, xi);
}

double StrategyParams::mixing_angle() const { return std::atan2(a1, a0); }

CVector StrategyParams::to_state() const {
    CVector v(2);
    v[0] = Cx{a0, 0.0};
    v[1] = std::polar(a1, phase);
    return v;
}

double half_cos_sq(double x) { return (1.0 + std::cos(x)) / 2.0; }
double half_sin_sq(double x) { return 1.0 - half_cos_sq(x); }

std::array<double, 3> pc_coefficients(const CoordinatorParams& gamma) {
    const double c1 = half_cos_sq(gamma.gamma1);
    const double c2 = half_cos_sq(gamma.gamma2);
    return {c1, c2 - c1, 1.0 - c2};
}

ComplexMatrix diagonal_operator(const Table& table) {
    check_table(table, "diagonal_operator");
    const int n = static_cast<int>(table.size());
    ComplexMatrix m(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m.at(i * n + j, i * n + j) = Cx{table[i][j], 0.0};
        }
    }
    return m;
}

ComplexMatrix correlated_operator(const ComplexMatrix& m,
                                  const CoordinatorParams& gamma) {
    if (m.dim() != 4) {
        throw UnsupportedDimension("correlated_operator: 4x4 operators only");
    }
    if (!m.is_hermitian()) {
        throw NonHermitian("correlated_operator: payoff operator must be Hermitian");
    }
    const ComplexMatrix j = entangler(gamma);
    return matmul(adjoint(j), matmul(m, j));
}

ComplexMatrix pc_operator(const Table& a_table, const CoordinatorParams& gamma) {
    require_2x2(a_table, "pc_operator");
    const auto k = pc_coefficients(gamma);
    ComplexMatrix m(4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double v = k[0] * a_table[i][j] + k[1] * sas_entry(a_table, i, j) +
                             k[2] * cac_entry(a_table, i, j);
            m.at(i * 2 + j, i * 2 + j) = Cx{v, 0.0};
        }
    }
    return m;
}

ComplexMatrix in_operator(const Table& a_table, const CoordinatorParams& gamma) {
    require_2x2(a_table, "in_operator");
    const ComplexMatrix a = diagonal_operator(a_table);
    const ComplexMatrix s = swap_operator(2);
    const ComplexMatrix t = twist_operator(2);
    const ComplexMatrix comm_s = sub(matmul(a, s), matmul(s, a));
    const ComplexMatrix comm_t = sub(matmul(a, t), matmul(t, a));
    return add(scale(Cx{0.0, std::sin(gamma.gamma1) / 2.0}, comm_s),
               scale(Cx{0.0, std::sin(gamma.gamma2) / 2.0}, comm_t));
}

PayoffBreakdown payoff(const ComplexMatrix& m, const StrategyParams& a,
                       const StrategyParams& b, const CoordinatorParams& gamma) {
    if (m.dim() != 4) throw UnsupportedDimension("payoff: 4x4 operators only");
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r != c && std::abs(m.at(r, c)) > HERM_TOL) {
                throw InvalidParameter("payoff: operator must be diagonal");
            }
        }
        if (std::abs(m.at(r, r).imag()) > HERM_TOL) {
            throw NonHermitian("payoff: diagonal entries must be real");
        }
    }
    Table table(2, std::vector<double>(2, 0.0));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) table[i][j] = m.at(i * 2 + j, i * 2 + j).real();
    }

    const CVector state = tensor_vec(a.to_state(), b.to_state());
    PayoffBreakdown out;
    out.total = expectation(state, correlated_operator(m, gamma));
    out.pseudo_classical = expectation(state, pc_operator(table, gamma));
    out.interference = expectation(state, in_operator(table, gamma));
    return out;
}

PayoffBreakdown payoff_analytic(const Table& a_table, const StrategyParams& a,
                                const StrategyParams& b,
                                const CoordinatorParams& gamma) {
    require_2x2(a_table, "payoff_analytic");
    const auto k = pc_coefficients(gamma);
    const double pa[2] = {a.a0 * a.a0, a.a1 * a.a1};
    const double pb[2] = {b.a0 * b.a0, b.a1 * b.a1};

    double pc = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double entry = k[0] * a_table[i][j] + k[1] * sas_entry(a_table, i, j) +
                                 k[2] * cac_entry(a_table, i, j);
            pc += pa[i] * pb[j] * entry;
        }
    }

    const double g_plus = (a_table[0][0] - a_table[1][1]) * std::sin(gamma.gamma2);
    const double g_minus = (a_table[0][1] - a_table[1][0]) * std::sin(gamma.gamma1);
    const double in = -a.a0 * a.a1 * b.a0 * b.a1 *
                      (g_plus * std::sin(a.phase + b.phase) +
                       g_minus * std::sin(a.phase - b.phase));

    return PayoffBreakdown{pc + in, pc, in};
}

double classical_payoff(const Table& a_table, const std::vector<double>& x,
                        const std::vector<double>& y) {
    check_table(a_table, "classical_payoff");
    const size_t n = a_table.size();
    if (x.size() != n || y.size() != n) {
        throw DimensionMismatch("classical_payoff: distribution size mismatch");
    }
    for (const auto* dist : {&x, &y}) {
        double sum = 0.0;
        for (double p : *dist) {
            if (!std::isfinite(p) || p < 0.0) {
                throw InvalidDistribution("classical_payoff: negative or non-finite probability");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > NORM_TOL) {
            throw InvalidDistribution("classical_payoff: probabilities must sum to 1");
        }
    }
    double out = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) out += x[i] * a_table[i][j] * y[j];
    }
    return out;
}

std::pair<Table, Table> altruism_mixture(const DiagonalGame& game, double gamma1) {
    if (!game.symmetric()) {
        throw NotSymmetricGame("altruism_mixture: game must satisfy B = SAS");
    }
    const double c = half_cos_sq(wrap_angle(gamma1));
    const double s = 1.0 - c;
    Table eff_a(game.n, std::vector<double>(game.n, 0.0));
    Table eff_b = eff_a;
    for (int i = 0; i < game.n; ++i) {
        for (int j = 0; j < game.n; ++j) {
            eff_a[i][j] = c * game.a[i][j] + s * game.b[i][j];
            eff_b[i][j] = c * game.b[i][j] + s * game.a[i][j];
        }
    }
    return {eff_a, eff_b};
}

std::pair<Table, Table> t_symmetric_mixture(const DiagonalGame& game, double gamma2) {
    if (game.n != 2) {
        throw UnsupportedDimension("t_symmetric_mixture: two-strategy games only");
    }
    if (!game.t_symmetric()) {
        throw NotTSymmetricGame("t_symmetric_mixture: game must satisfy B = TAT");
    }
    const CoordinatorParams gamma(std::numbers::pi / 2.0, gamma2);
    const ComplexMatrix pc_a = pc_operator(game.a, gamma);
    const ComplexMatrix pc_b = pc_operator(game.b, gamma);
    Table eff_a(2, std::vector<double>(2, 0.0));
    Table eff_b = eff_a;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            eff_a[i][j] = pc_a.at(i * 2 + j, i * 2 + j).real();
            eff_b[i][j] = pc_b.at(i * 2 + j, i * 2 + j).real();
        }
    }
    return {eff_a, eff_b};
}

}  // namespace qgame
