#include "qgame/bell.hpp"

#include <cmath>
#include <numbers>

namespace qgame {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kThetaFlatTol = 1e-9;
constexpr int kThetaSweepPoints = 64;

}  // namespace

ComplexMatrix bell_operator() {
    // sqrt(2) * (sigma_x (x) sigma_x + sigma_z (x) sigma_z):
    // sigma_z (x) sigma_z is diag(1,-1,-1,1), sigma_x (x) sigma_x is the
    // antidiagonal permutation.
    ComplexMatrix m(4);
    m.at(0, 0) = Cx{kSqrt2, 0.0};
    m.at(1, 1) = Cx{-kSqrt2, 0.0};
    m.at(2, 2) = Cx{-kSqrt2, 0.0};
    m.at(3, 3) = Cx{kSqrt2, 0.0};
    m.at(0, 3) = Cx{kSqrt2, 0.0};
    m.at(1, 2) = Cx{kSqrt2, 0.0};
    m.at(2, 1) = Cx{kSqrt2, 0.0};
    m.at(3, 0) = Cx{kSqrt2, 0.0};
    return m;
}

BellGame bell_game(const SchmidtParams& eta) { return BellGame{bell_operator(), eta}; }

double bell_payoff(const Su2Params& a, const Su2Params& b, const SchmidtParams& eta) {
    // Amplitudes of U(a) (x) U(b) applied to the Schmidt state, written out
    // directly; equals expectation(schmidt_joint_state(a, b, eta),
    // bell_operator()) and is checked against it in the tests.
    const double ca = std::cos(a.theta / 2.0), sa = std::sin(a.theta / 2.0);
    const double cb = std::cos(b.theta / 2.0), sb = std::sin(b.theta / 2.0);
    const Cx ea = std::polar(1.0, a.phi), eb = std::polar(1.0, b.phi);
    const Cx ua00{ca, 0.0}, ua01 = -sa * std::conj(ea), ua10 = sa * ea, ua11{ca, 0.0};
    const Cx ub00{cb, 0.0}, ub01 = -sb * std::conj(eb), ub10 = sb * eb, ub11{cb, 0.0};

    const double c = std::cos(eta.eta1 / 2.0);
    const Cx s = std::polar(std::sin(eta.eta1 / 2.0), eta.eta2);

    const Cx psi0 = ua00 * ub00 * c + ua01 * ub01 * s;
    const Cx psi1 = ua00 * ub10 * c + ua01 * ub11 * s;
    const Cx psi2 = ua10 * ub00 * c + ua11 * ub01 * s;
    const Cx psi3 = ua10 * ub10 * c + ua11 * ub11 * s;

    const double zz = std::norm(psi0) - std::norm(psi1) - std::norm(psi2) + std::norm(psi3);
    const double xx = 2.0 * (std::conj(psi0) * psi3 + std::conj(psi1) * psi2).real();
    return kSqrt2 * (zz + xx);
}

double bell_nash_payoff(const SchmidtParams& eta) {
    return kSqrt2 * (1.0 + std::sin(eta.eta1) * std::cos(eta.eta2));
}

BellNashReport bell_nash_search(const SchmidtParams& eta, const SearchConfig& cfg) {
    SearchProblem prob;
    prob.chart_a = Chart{CoordSpec{0.0, kPi, false, "theta"},
                         CoordSpec{-kPi, kPi, true, "phi"}};
    prob.chart_b = prob.chart_a;
    const PayoffFn common = [eta](const Point2& a, const Point2& b) {
        return bell_payoff(Su2Params(a[0], a[1]), Su2Params(b[0], b[1]), eta);
    };
    prob.payoff_a = common;
    prob.payoff_b = common;
    prob.seeds.push_back(Profile{{0.0, 0.0}, {0.0, 0.0}});

    const SearchOutcome outcome = alternating_search(prob, cfg);

    BellNashReport report;
    report.eta = eta;
    report.analytic = bell_nash_payoff(eta);
    report.numeric = outcome.payoff_a;
    report.gap = std::abs(report.analytic - report.numeric);
    report.residual = outcome.residual;
    report.converged = outcome.converged;

    double lo = bell_payoff(Su2Params(0.0, 0.0), Su2Params(0.0, 0.0), eta);
    double hi = lo;
    for (int i = 1; i < kThetaSweepPoints; ++i) {
        const double theta = 2.0 * kPi * static_cast<double>(i) / (kThetaSweepPoints - 1);
        const double v = bell_payoff(Su2Params(theta, 0.0), Su2Params(theta, 0.0), eta);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    report.theta_flat_verified = (hi - lo) <= kThetaFlatTol;
    return report;
}

}  // namespace qgame
