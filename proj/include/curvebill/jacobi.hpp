#pragma once

// Linear algebra of transversal Jacobi fields along billiard orbits.
//
// A JacobiMatrix acts on the column (J, J'): the normal component of a Jacobi
// field and its derivative along the geodesic. Free flight over arclength tau
// is the fundamental matrix of J'' + kappa J = 0; a reflection is the mirror
// formula [[-1, 0], [2 k_g / sin(phi), -1]].

#include <array>
#include <span>

#include "curvebill/surface.hpp"

namespace curvebill {

struct JacobiMatrix {
    // Row-major: {{a, b}, {c, d}}.
    std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};

    double operator()(int r, int c) const { return m[r][c]; }
    double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    double trace() const { return m[0][0] + m[1][1]; }
    /// General 2x2 inverse (no det = 1 shortcut).
    JacobiMatrix inverse() const;
    double max_abs_diff(const JacobiMatrix& o) const;

    static JacobiMatrix identity() { return {}; }
};

JacobiMatrix operator*(const JacobiMatrix& a, const JacobiMatrix& b);

/// Self-test switches for the verification battery. Defaults give the
/// correct dynamics.
struct JacobiOptions {
    /// Use [[cos, sin], [sin, cos]] for the spherical flight matrix instead of
    /// the fundamental matrix [[cos, sin], [-sin, cos]].
    bool printed_sphere_evolution = false;
    /// Multiplies every geodesic curvature fed into a reflection matrix.
    double kg_sign = 1.0;
};

/// Free-flight matrix over arclength tau (negative tau gives the inverse).
JacobiMatrix evolution(Curvature kappa, double tau, const JacobiOptions& opt = {});

/// Mirror matrix at a bounce with boundary geodesic curvature k_g and angle
/// phi to the boundary tangent. Throws GrazingReflection when sin(phi) <= 1e-12.
JacobiMatrix reflection(double k_g, double phi);

/// F(L) = 2/L on E^2, coth(L/2) on H^2, cot(L/2) on S^2. Throws
/// std::domain_error for L <= 0 and at the poles of cot (L a multiple of 2 pi).
double f_of_l(Curvature kappa, double perimeter);

struct ThreeBounceInput {
    Curvature kappa = Curvature::flat;
    // Side x joins bounce 0 to bounce 1, z joins 1 to 2, y joins 2 to 0.
    double x = 0.0, y = 0.0, z = 0.0;
    std::array<double, 3> phi{};  // angles at bounces 0, 1, 2
    std::array<double, 3> kg{};   // geodesic curvatures at bounces 0, 1, 2
};

/// P(z) R(x1) P(x) R(x0) P(y) R(x2): one full turn of the Jacobi data,
/// starting just before the bounce at vertex 2.
JacobiMatrix three_bounce_product(const ThreeBounceInput& in, const JacobiOptions& opt = {});

/// Generic fold over an n-bounce cycle: P(sides[n-1]) R_{n-1} ... P(sides[0]) R_0,
/// with sides[i] the flight from bounce i to bounce i+1.
JacobiMatrix cycle_product(Curvature kappa, std::span<const double> sides, std::span<const double> phi,
                           std::span<const double> kg, const JacobiOptions& opt = {});

/// Both sides of the top-right entry comparison obtained by splitting the
/// three-bounce product as P(z) R1 P(x) = R2^-1 P(y)^-1 R0^-1.
struct TopRightSplit {
    double product_mismatch = 0.0;  // [P(z) R1 P(x)]_{01} - [R2^-1 P(y)^-1 R0^-1]_{01}
    double closed_form = 0.0;       // 2 k1 S(x) S(z) / sin(phi1) - (S(x + z) - S(y))
};

TopRightSplit top_right_split(const ThreeBounceInput& in, const JacobiOptions& opt = {});

}  // namespace curvebill
