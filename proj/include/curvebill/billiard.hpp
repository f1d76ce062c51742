#pragma once

// The billiard map T(s, phi) on a BoundaryCurve and its derivatives.
//
// phi is the angle of the outgoing ray measured counterclockwise from the
// boundary tangent, so phi in (0, pi) points into the table.

#include <array>
#include <vector>

#include "curvebill/boundary.hpp"
#include "curvebill/jacobi.hpp"

namespace curvebill {

inline constexpr double kGrazingAngle = 1e-9;
inline constexpr double kLaunchOffset = 1e-9;
inline constexpr double kDerivativeStep = 1e-5;

struct PhasePoint {
    double s = 0.0;
    double phi = 0.0;
};

struct Collision {
    PhasePoint next;
    double side_length = 0.0;
};

struct Orbit {
    std::vector<double> vertices;  // s at each bounce, starting with the launch point
    std::vector<double> angles;    // outgoing phi at each bounce
    std::vector<double> sides;     // sides[i] joins vertex i to vertex i+1 (cyclically)
    double perimeter = 0.0;
    PhasePoint final_point;        // phase point after the last bounce

    std::size_t size() const { return vertices.size(); }
};

/// Euclidean combination of the wrapped arclength difference and the angle
/// difference, both at unit weight.
double phase_distance(const BoundaryCurve& b, const PhasePoint& p, const PhasePoint& q);

/// One application of the billiard map. Throws CornerHit, GrazingReflection
/// or NoIntersection.
Collision next_collision(const BoundaryCurve& b, const PhasePoint& p);

/// n-fold composition. Errors carry the index of the failing bounce.
Orbit iterate(const BoundaryCurve& b, const PhasePoint& p, int n);

/// Outcome of T^n without exceptions, for bulk sampling.
struct ReturnResult {
    bool ok = false;
    CollisionFailure failure = CollisionFailure::no_intersection;
    PhasePoint end;
    double perimeter = 0.0;
};
ReturnResult try_iterate(const BoundaryCurve& b, const PhasePoint& p, int n);

/// DT^3 assembled from Jacobi evolution and reflection matrices along a
/// three-bounce orbit.
JacobiMatrix d3_jacobi(const BoundaryCurve& b, const Orbit& orbit, const JacobiOptions& opt = {});

/// Jacobian of T^n in (s, phi) coordinates by central differences with step
/// kDerivativeStep. Row index is the output coordinate (0 = s, 1 = phi).
std::array<std::array<double, 2>, 2> dn_finite_difference(const BoundaryCurve& b, const PhasePoint& p, int n);

inline std::array<std::array<double, 2>, 2> d3_finite_difference(const BoundaryCurve& b, const PhasePoint& p)
{
    return dn_finite_difference(b, p, 3);
}

}  // namespace curvebill
