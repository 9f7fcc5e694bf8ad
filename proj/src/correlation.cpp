#include "qgame/correlation.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgame {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw InvalidParameter(std::string(what) + ": non-finite value");
    }
}

void require_n_ge_2(int n, const char* what) {
    if (n < 2) {
        throw InvalidParameter(std::string(what) + ": need n >= 2, got " + std::to_string(n));
    }
}

}  // namespace

double wrap_angle(double radians) {
    require_finite(radians, "wrap_angle");
    // remainder() lands in [-pi, pi] for a 2*pi period
    return std::remainder(radians, 2.0 * kPi);
}

CoordinatorParams::CoordinatorParams(double g1, double g2)
    : gamma1(wrap_angle(g1)), gamma2(wrap_angle(g2)) {}

SchmidtParams::SchmidtParams(double e1, double e2) : eta1(e1), eta2(wrap_angle(e2)) {
    require_finite(e1, "SchmidtParams");
    if (eta1 < 0.0 || eta1 > kPi) {
        throw InvalidParameter("SchmidtParams: eta1 must lie in [0, pi], got " +
                               std::to_string(eta1));
    }
}

Su2Params::Su2Params(double t, double p) : theta(t), phi(p) {
    require_finite(t, "Su2Params");
    require_finite(p, "Su2Params");
}

ComplexMatrix swap_operator(int n) {
    require_n_ge_2(n, "swap_operator");
    ComplexMatrix s(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s.at(j * n + i, i * n + j) = Cx{1.0, 0.0};
        }
    }
    return s;
}

ComplexMatrix convert_operator(int n) {
    require_n_ge_2(n, "convert_operator");
    ComplexMatrix c(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            c.at((n - 1 - i) * n + (n - 1 - j), i * n + j) = Cx{1.0, 0.0};
        }
    }
    return c;
}

ComplexMatrix twist_operator(int n) {
    require_n_ge_2(n, "twist_operator");
    ComplexMatrix t(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            t.at((n - 1 - j) * n + (n - 1 - i), i * n + j) = Cx{1.0, 0.0};
        }
    }
    return t;
}

ComplexMatrix entangler(const CoordinatorParams& gamma, int n) {
    if (n != 2) {
        throw UnsupportedDimension("entangler: defined for two-strategy games only");
    }
    // S^2 = T^2 = I makes each exponential exactly summable:
    // exp(i g X / 2) = cos(g/2) I + i sin(g/2) X.
    const ComplexMatrix id = ComplexMatrix::identity(4);
    const ComplexMatrix s = swap_operator(2);
    const ComplexMatrix t = twist_operator(2);
    const ComplexMatrix left =
        add(scale(Cx{std::cos(gamma.gamma1 / 2.0), 0.0}, id),
            scale(Cx{0.0, std::sin(gamma.gamma1 / 2.0)}, s));
    const ComplexMatrix right =
        add(scale(Cx{std::cos(gamma.gamma2 / 2.0), 0.0}, id),
            scale(Cx{0.0, std::sin(gamma.gamma2 / 2.0)}, t));
    return matmul(left, right);
}

CVector schmidt_state(const SchmidtParams& eta) {
    CVector v(4);
    v[0] = Cx{std::cos(eta.eta1 / 2.0), 0.0};
    v[3] = std::polar(std::sin(eta.eta1 / 2.0), eta.eta2);
    return v;
}

ComplexMatrix su2_rotation(const Su2Params& p) {
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    ComplexMatrix u(2);
    u.at(0, 0) = Cx{c, 0.0};
    u.at(0, 1) = -std::polar(s, -p.phi);
    u.at(1, 0) = std::polar(s, p.phi);
    u.at(1, 1) = Cx{c, 0.0};
    return u;
}

CVector schmidt_joint_state(const Su2Params& a, const Su2Params& b,
                            const SchmidtParams& eta) {
    return apply(tensor_mat(su2_rotation(a), su2_rotation(b)), schmidt_state(eta));
}

}  // namespace qgame
