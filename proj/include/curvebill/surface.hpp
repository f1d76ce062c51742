#pragma once

// Geometry kernel for the three constant-curvature model surfaces.
//
//   E^2 : the plane z = 0 in R^3
//   S^2 : the unit sphere in R^3
//   H^2 : the upper sheet of the hyperboloid -x0^2 + x1^2 + x2^2 = -1 in
//         Minkowski 3-space, coordinates stored as (x, y, z) = (x0, x1, x2)
//
// Geodesics and parallel transport are closed form in these models.

#include <cmath>
#include <stdexcept>
#include <string>

namespace curvebill {

enum class Curvature : int { hyperbolic = -1, flat = 0, spherical = 1 };

/// Throws std::invalid_argument unless kappa is -1, 0 or +1.
Curvature curvature_from_int(int kappa);

inline int to_int(Curvature k) { return static_cast<int>(k); }
std::string to_string(Curvature k);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double a) { x *= a; y *= a; z *= a; return *this; }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Ambient bilinear form of the model: Euclidean on E^2 and S^2, Minkowski
/// (-,+,+) on H^2. Restricted to tangent spaces it is the surface metric.
inline double inner(Curvature k, const Vec3& a, const Vec3& b)
{
    if (k == Curvature::hyperbolic) return -a.x * b.x + a.y * b.y + a.z * b.z;
    return dot(a, b);
}

/// Generalized cosine/sine: the solutions of f'' + kappa f = 0 with
/// (f, f')(0) = (1, 0) and (0, 1) respectively.
inline double cos_k(Curvature k, double t)
{
    switch (k) {
    case Curvature::spherical: return std::cos(t);
    case Curvature::hyperbolic: return std::cosh(t);
    default: return 1.0;
    }
}
inline double sin_k(Curvature k, double t)
{
    switch (k) {
    case Curvature::spherical: return std::sin(t);
    case Curvature::hyperbolic: return std::sinh(t);
    default: return t;
    }
}

struct SurfacePoint {
    Curvature kappa = Curvature::flat;
    Vec3 coords;
};

struct UnitTangent {
    SurfacePoint base;
    Vec3 dir;
};

/// Validating constructors. Inputs are projected onto the model and must be
/// within 1e-6 of it already; anything further off is rejected.
SurfacePoint make_point(Curvature k, const Vec3& coords);
UnitTangent make_tangent(const SurfacePoint& base, const Vec3& dir);

/// Reprojection onto the model surface (and onto the tangent space for
/// tangents), restoring the embedding invariants after roundoff.
SurfacePoint renormalized(const SurfacePoint& p);
UnitTangent renormalized(const UnitTangent& u);

/// Residual of the embedding constraint: | |p| - 1 | on S^2,
/// |<p,p> + 1| on H^2, |z| on E^2.
double embedding_error(const SurfacePoint& p);

/// Unit tangent obtained by rotating u.dir by +pi/2 in the oriented tangent
/// plane (counterclockwise seen from outside on S^2, from above on E^2, and
/// compatible with the Poincare disk projection on H^2).
Vec3 left_normal(const UnitTangent& u);
Vec3 left_normal(Curvature k, const Vec3& base, const Vec3& dir);

UnitTangent geodesic_flow(const UnitTangent& start, double tau);

/// Geodesic distance. Uses the half-chord forms 2 asin(|p-q|/2) (S^2) and
/// 2 asinh(|p-q|_M / 2) (H^2), which agree with arccos / arccosh of the inner
/// product but keep full relative precision for nearby points. Throws
/// std::invalid_argument for points on different surfaces.
double distance(const SurfacePoint& p, const SurfacePoint& q);

/// Initial unit tangent at p of the minimizing geodesic towards q.
/// Throws std::domain_error for coincident or (on S^2) antipodal points.
UnitTangent direction_to(const SurfacePoint& p, const SurfacePoint& q);

/// Angle in [0, pi]. Throws std::invalid_argument when the base points
/// differ by more than 1e-9.
double angle_between(const UnitTangent& u, const UnitTangent& v);

/// Side opposite the included angle theta in a geodesic triangle with
/// adjacent sides x and z. Throws std::domain_error outside
/// x, z > 0, theta in (0, pi), and x, z < pi on S^2.
double law_of_cosines_side(double x, double z, double theta, Curvature k);

}  // namespace curvebill
