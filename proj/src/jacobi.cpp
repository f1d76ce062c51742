#include "curvebill/jacobi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curvebill/errors.hpp"

namespace curvebill {

JacobiMatrix operator*(const JacobiMatrix& a, const JacobiMatrix& b)
{
    JacobiMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

JacobiMatrix JacobiMatrix::inverse() const
{
    const double det = determinant();
    if (det == 0.0) throw std::domain_error("singular Jacobi matrix");
    JacobiMatrix r;
    r.m = {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
    return r;
}

double JacobiMatrix::max_abs_diff(const JacobiMatrix& o) const
{
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(m[i][j] - o.m[i][j]));
    return d;
}

JacobiMatrix evolution(Curvature kappa, double tau, const JacobiOptions& opt)
{
    const double c = cos_k(kappa, tau);
    const double s = sin_k(kappa, tau);
    JacobiMatrix p;
    // Derivative row of the fundamental matrix: (-kappa S, C).
    double lower_left = -to_int(kappa) * s;
    if (kappa == Curvature::spherical && opt.printed_sphere_evolution) lower_left = s;
    p.m = {{{c, s}, {lower_left, c}}};
    return p;
}

JacobiMatrix reflection(double k_g, double phi)
{
    const double sp = std::sin(phi);
    if (!(sp > 1e-12)) throw GrazingReflection("reflection matrix at grazing angle");
    JacobiMatrix r;
    r.m = {{{-1.0, 0.0}, {2.0 * k_g / sp, -1.0}}};
    return r;
}

double f_of_l(Curvature kappa, double perimeter)
{
    if (!(perimeter > 0.0)) throw std::domain_error("F(L) needs L > 0");
    switch (kappa) {
    case Curvature::spherical: {
        const double h = 0.5 * perimeter;
        const double s = std::sin(h);
        if (std::abs(s) <= 1e-12) throw std::domain_error("F(L) = cot(L/2) has a pole at this L");
        return std::cos(h) / s;
    }
    case Curvature::hyperbolic: return 1.0 / std::tanh(0.5 * perimeter);
    default: return 2.0 / perimeter;
    }
}

JacobiMatrix three_bounce_product(const ThreeBounceInput& in, const JacobiOptions& opt)
{
    if (!(in.x > 0.0) || !(in.y > 0.0) || !(in.z > 0.0))
        throw std::domain_error("three_bounce_product: side lengths must be positive");
    const auto R = [&](int i) { return reflection(opt.kg_sign * in.kg[i], in.phi[i]); };
    const auto P = [&](double t) { return evolution(in.kappa, t, opt); };
    return P(in.z) * R(1) * P(in.x) * R(0) * P(in.y) * R(2);
}

JacobiMatrix cycle_product(Curvature kappa, std::span<const double> sides, std::span<const double> phi,
                           std::span<const double> kg, const JacobiOptions& opt)
{
    if (sides.size() != phi.size() || sides.size() != kg.size())
        throw std::invalid_argument("cycle_product: mismatched input lengths");
    JacobiMatrix acc;
    for (std::size_t i = 0; i < sides.size(); ++i)
        acc = evolution(kappa, sides[i], opt) * reflection(opt.kg_sign * kg[i], phi[i]) * acc;
    return acc;
}

TopRightSplit top_right_split(const ThreeBounceInput& in, const JacobiOptions& opt)
{
    const auto R = [&](int i) { return reflection(opt.kg_sign * in.kg[i], in.phi[i]); };
    const auto P = [&](double t) { return evolution(in.kappa, t, opt); };
    const JacobiMatrix lhs = P(in.z) * R(1) * P(in.x);
    const JacobiMatrix rhs = R(2).inverse() * P(in.y).inverse() * R(0).inverse();
    const auto S = [&](double t) { return sin_k(in.kappa, t); };
    TopRightSplit out;
    out.product_mismatch = lhs(0, 1) - rhs(0, 1);
    out.closed_form = 2.0 * opt.kg_sign * in.kg[1] * S(in.x) * S(in.z) / std::sin(in.phi[1]) - (S(in.x + in.z) - S(in.y));
    return out;
}

}  // namespace curvebill
