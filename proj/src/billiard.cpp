#include "curvebill/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvebill {

namespace {

using std::numbers::pi;

struct Step {
    bool ok = false;
    CollisionFailure failure = CollisionFailure::no_intersection;
    Collision collision;
};

Step fail(CollisionFailure f) { return {false, f, {}}; }

bool grazing(double phi) { return !(phi > kGrazingAngle && phi < pi - kGrazingAngle); }

// Root of level(geodesic(tau)) on a bracket [lo, hi] with f(lo) > 0 >= f(hi):
// a few bisection steps, then the Illinois variant of regula falsi.
template <class F>
double polish_root(F&& f, double lo, double flo, double hi, double fhi)
{
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm > 0.0) lo = mid, flo = fm;
        else hi = mid, fhi = fm;
    }
    if (fhi == 0.0) return hi;
    int side = 0;
    double c = hi;
    for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
        const double prev = c;
        c = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if (fc > 0.0) {
            lo = c, flo = fc;
            if (side == 1) fhi *= 0.5;
            side = 1;
        } else {
            hi = c, fhi = fc;
            if (side == -1) flo *= 0.5;
            side = -1;
        }
        if (std::abs(c - prev) <= 1e-13) break;
    }
    return c;
}

Step collide(const BoundaryCurve& b, const PhasePoint& p)
{
    if (b.near_corner(p.s)) return fail(CollisionFailure::corner_hit);
    if (grazing(p.phi)) return fail(CollisionFailure::grazing_reflection);

    const Curvature k = b.curvature();
    const UnitTangent tangent = b.tangent_at(b.param_at(p.s));
    const Vec3 normal = left_normal(tangent);
    const UnitTangent start =
        renormalized(UnitTangent{tangent.base, std::cos(p.phi) * tangent.dir + std::sin(p.phi) * normal});
    auto level_at = [&](double tau) { return b.level(geodesic_flow(start, tau).base.coords); };

    const double step = std::min(b.total_length() / 64.0, 0.05);
    const double tau_max = b.max_chord();
    double lo = kLaunchOffset;
    double flo = level_at(lo);
    if (!(flo > 0.0)) return fail(CollisionFailure::grazing_reflection);
    double hi = lo, fhi = flo;
    for (;;) {
        if (lo >= tau_max) return fail(CollisionFailure::no_intersection);
        hi = std::min(lo + step, tau_max);
        fhi = level_at(hi);
        if (!(fhi > 0.0)) break;
        lo = hi, flo = fhi;
    }
    const double tau = polish_root(level_at, lo, flo, hi, fhi);

    const UnitTangent arrival = geodesic_flow(start, tau);
    const CurveParam hit = b.locate(arrival.base.coords);
    const double s_hit = b.arclength_at(hit);
    if (b.near_corner(s_hit)) return fail(CollisionFailure::corner_hit);
    const UnitTangent t_hit = b.tangent_at(hit);
    const Vec3 n_hit = left_normal(t_hit);
    // Reflection keeps the tangential component and flips the normal one.
    const double phi = std::atan2(-inner(k, arrival.dir, n_hit), inner(k, arrival.dir, t_hit.dir));
    if (grazing(phi)) return fail(CollisionFailure::grazing_reflection);
    return {true, CollisionFailure::no_intersection, {{s_hit, phi}, tau}};
}

[[noreturn]] void throw_failure(CollisionFailure f, const PhasePoint& p, int bounce)
{
    const std::string where = "at s = " + std::to_string(p.s) + ", phi = " + std::to_string(p.phi);
    switch (f) {
    case CollisionFailure::corner_hit: throw CornerHit("orbit hits a corner " + where, bounce);
    case CollisionFailure::grazing_reflection: throw GrazingReflection("grazing reflection " + where, bounce);
    default: throw NoIntersection("geodesic misses the boundary " + where, bounce);
    }
}

}  // namespace

double phase_distance(const BoundaryCurve& b, const PhasePoint& p, const PhasePoint& q)
{
    return std::hypot(b.wrapped_difference(p.s, q.s), p.phi - q.phi);
}

Collision next_collision(const BoundaryCurve& b, const PhasePoint& p)
{
    const Step st = collide(b, p);
    if (!st.ok) throw_failure(st.failure, p, -1);
    return st.collision;
}

Orbit iterate(const BoundaryCurve& b, const PhasePoint& p, int n)
{
    if (n < 1) throw std::invalid_argument("iterate needs n >= 1");
    Orbit orbit;
    PhasePoint cur{b.wrap(p.s), p.phi};
    for (int i = 0; i < n; ++i) {
        const Step st = collide(b, cur);
        if (!st.ok) throw_failure(st.failure, cur, i);
        orbit.vertices.push_back(cur.s);
        orbit.angles.push_back(cur.phi);
        orbit.sides.push_back(st.collision.side_length);
        orbit.perimeter += st.collision.side_length;
        cur = st.collision.next;
    }
    orbit.final_point = cur;
    return orbit;
}

ReturnResult try_iterate(const BoundaryCurve& b, const PhasePoint& p, int n)
{
    ReturnResult r;
    PhasePoint cur{b.wrap(p.s), p.phi};
    for (int i = 0; i < n; ++i) {
        const Step st = collide(b, cur);
        if (!st.ok) {
            r.failure = st.failure;
            return r;
        }
        r.perimeter += st.collision.side_length;
        cur = st.collision.next;
    }
    r.ok = true;
    r.end = cur;
    return r;
}

JacobiMatrix d3_jacobi(const BoundaryCurve& b, const Orbit& orbit, const JacobiOptions& opt)
{
    if (orbit.size() != 3 || orbit.sides.size() != 3 || orbit.angles.size() != 3)
        throw std::invalid_argument("d3_jacobi needs a three-bounce orbit");
    ThreeBounceInput in;
    in.kappa = b.curvature();
    in.x = orbit.sides[0];
    in.z = orbit.sides[1];
    in.y = orbit.sides[2];
    for (int i = 0; i < 3; ++i) {
        in.phi[i] = orbit.angles[i];
        in.kg[i] = b.geodesic_curvature(orbit.vertices[i]);
    }
    return three_bounce_product(in, opt);
}

std::array<std::array<double, 2>, 2> dn_finite_difference(const BoundaryCurve& b, const PhasePoint& p, int n)
{
    const double h = kDerivativeStep;
    std::array<std::array<double, 2>, 2> jac{};
    for (int col = 0; col < 2; ++col) {
        PhasePoint plus = p, minus = p;
        (col == 0 ? plus.s : plus.phi) += h;
        (col == 0 ? minus.s : minus.phi) -= h;
        const PhasePoint fp = iterate(b, plus, n).final_point;
        const PhasePoint fm = iterate(b, minus, n).final_point;
        jac[0][col] = b.wrapped_difference(fp.s, fm.s) / (2.0 * h);
        jac[1][col] = (fp.phi - fm.phi) / (2.0 * h);
    }
    return jac;
}

}  // namespace curvebill
