#include "curvebill/surface.hpp"

#include <algorithm>
#include <numbers>

namespace curvebill {

namespace {

constexpr double kModelTolerance = 1e-6;

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

}  // namespace

Curvature curvature_from_int(int kappa)
{
    switch (kappa) {
    case -1: return Curvature::hyperbolic;
    case 0: return Curvature::flat;
    case 1: return Curvature::spherical;
    default: throw std::invalid_argument("curvature must be -1, 0 or +1, got " + std::to_string(kappa));
    }
}

std::string to_string(Curvature k)
{
    switch (k) {
    case Curvature::hyperbolic: return "H2";
    case Curvature::spherical: return "S2";
    default: return "E2";
    }
}

SurfacePoint renormalized(const SurfacePoint& p)
{
    SurfacePoint out = p;
    Vec3& c = out.coords;
    switch (p.kappa) {
    case Curvature::spherical: c *= 1.0 / norm(c); break;
    case Curvature::hyperbolic: c.x = std::sqrt(1.0 + c.y * c.y + c.z * c.z); break;
    default: c.z = 0.0; break;
    }
    return out;
}

UnitTangent renormalized(const UnitTangent& u)
{
    UnitTangent out{renormalized(u.base), u.dir};
    const Curvature k = out.base.kappa;
    const Vec3& p = out.base.coords;
    Vec3& v = out.dir;
    switch (k) {
    case Curvature::spherical: v -= dot(v, p) * p; break;
    case Curvature::hyperbolic: v += inner(k, v, p) * p; break;
    default: v.z = 0.0; break;
    }
    const double len2 = inner(k, v, v);
    if (!(len2 > 0.0)) throw std::domain_error("degenerate tangent vector");
    v *= 1.0 / std::sqrt(len2);
    return out;
}

double embedding_error(const SurfacePoint& p)
{
    const Vec3& c = p.coords;
    switch (p.kappa) {
    case Curvature::spherical: return std::abs(norm(c) - 1.0);
    case Curvature::hyperbolic: return std::abs(inner(p.kappa, c, c) + 1.0);
    default: return std::abs(c.z);
    }
}

SurfacePoint make_point(Curvature k, const Vec3& coords)
{
    SurfacePoint p{k, coords};
    if (k == Curvature::hyperbolic && !(coords.x > 0.0))
        throw std::invalid_argument("hyperboloid point must have x0 > 0");
    if (!(embedding_error(p) <= kModelTolerance))
        throw std::invalid_argument("point is not on the " + to_string(k) + " model surface");
    return renormalized(p);
}

UnitTangent make_tangent(const SurfacePoint& base, const Vec3& dir)
{
    const Curvature k = base.kappa;
    const Vec3& p = base.coords;
    double normal_part = 0.0;
    switch (k) {
    case Curvature::spherical: normal_part = dot(dir, p); break;
    case Curvature::hyperbolic: normal_part = inner(k, dir, p); break;
    default: normal_part = dir.z; break;
    }
    if (std::abs(normal_part) > kModelTolerance || std::abs(std::sqrt(std::abs(inner(k, dir, dir))) - 1.0) > kModelTolerance)
        throw std::invalid_argument("direction is not a unit tangent at the base point");
    return renormalized(UnitTangent{base, dir});
}

Vec3 left_normal(Curvature k, const Vec3& base, const Vec3& dir)
{
    switch (k) {
    case Curvature::spherical: return cross(base, dir);
    case Curvature::hyperbolic: {
        Vec3 n = cross(base, dir);
        n.x = -n.x;
        return n;
    }
    default: return {-dir.y, dir.x, 0.0};
    }
}

Vec3 left_normal(const UnitTangent& u) { return left_normal(u.base.kappa, u.base.coords, u.dir); }

UnitTangent geodesic_flow(const UnitTangent& start, double tau)
{
    if (tau == 0.0) return start;
    const Curvature k = start.base.kappa;
    const double c = cos_k(k, tau);
    const double s = sin_k(k, tau);
    const Vec3& p = start.base.coords;
    const Vec3& v = start.dir;
    UnitTangent out{{k, c * p + s * v}, (-to_int(k) * s) * p + c * v};
    return renormalized(out);
}

double distance(const SurfacePoint& p, const SurfacePoint& q)
{
    if (p.kappa != q.kappa) throw std::invalid_argument("distance: points on different surfaces");
    const Vec3 d = p.coords - q.coords;
    switch (p.kappa) {
    case Curvature::spherical: return std::atan2(norm(cross(p.coords, q.coords)), dot(p.coords, q.coords));
    case Curvature::hyperbolic: {
        const double chord2 = std::max(0.0, inner(p.kappa, d, d));
        return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
    }
    default: return norm(d);
    }
}

UnitTangent direction_to(const SurfacePoint& p, const SurfacePoint& q)
{
    const Curvature k = p.kappa;
    Vec3 w;
    switch (k) {
    case Curvature::spherical: w = q.coords - dot(p.coords, q.coords) * p.coords; break;
    case Curvature::hyperbolic: w = q.coords + inner(k, p.coords, q.coords) * p.coords; break;
    default: w = q.coords - p.coords; w.z = 0.0; break;
    }
    const double len2 = inner(k, w, w);
    if (!(len2 > 1e-30)) throw std::domain_error("direction_to: coincident or antipodal points");
    return UnitTangent{p, w * (1.0 / std::sqrt(len2))};
}

double angle_between(const UnitTangent& u, const UnitTangent& v)
{
    if (u.base.kappa != v.base.kappa || norm(u.base.coords - v.base.coords) > 1e-9)
        throw std::invalid_argument("angle_between: tangents have different base points");
    const Curvature k = u.base.kappa;
    const double c = inner(k, u.dir, v.dir);
    const double s = inner(k, left_normal(u), v.dir);
    return std::atan2(std::abs(s), clamp_unit(c));
}

double law_of_cosines_side(double x, double z, double theta, Curvature k)
{
    if (!(x > 0.0) || !(z > 0.0)) throw std::domain_error("law_of_cosines_side: sides must be positive");
    if (!(theta > 0.0) || !(theta < std::numbers::pi))
        throw std::domain_error("law_of_cosines_side: angle must lie in (0, pi)");
    switch (k) {
    case Curvature::spherical:
        if (!(x < std::numbers::pi) || !(z < std::numbers::pi))
            throw std::domain_error("law_of_cosines_side: spherical sides must be < pi");
        return std::acos(clamp_unit(std::cos(x) * std::cos(z) + std::sin(x) * std::sin(z) * std::cos(theta)));
    case Curvature::hyperbolic:
        return std::acosh(std::max(1.0, std::cosh(x) * std::cosh(z) - std::sinh(x) * std::sinh(z) * std::cos(theta)));
    default:
        return std::sqrt(std::max(0.0, x * x + z * z - 2.0 * x * z * std::cos(theta)));
    }
}

}  // namespace curvebill
