#include "curvebill/periodic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <optional>

#include "curvebill/parallel.hpp"
#include "curvebill/random.hpp"

namespace curvebill {

namespace {

using std::numbers::pi;

constexpr double kCoincident = 1e-9;
constexpr double kGradTolerance = 1e-12;
constexpr int kMaxNewton = 100;
constexpr double kHessianStep = 1e-5;
constexpr double kMinSide = 1e-6;
constexpr double kDedup = 1e-6;
constexpr double kReturnTolerance = 1e-8;

std::array<SurfacePoint, 3> vertices_of(const BoundaryCurve& b, const Triple& s)
{
    std::array<SurfacePoint, 3> p{b.point_at(s[0]), b.point_at(s[1]), b.point_at(s[2])};
    for (int i = 0; i < 3; ++i)
        if (distance(p[i], p[(i + 1) % 3]) <= kCoincident)
            throw std::domain_error("inscribed triangle has coincident vertices");
    return p;
}

double norm3(const Triple& g) { return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]); }

Eigen::Matrix3d fd_hessian(const BoundaryCurve& b, const Triple& s)
{
    Eigen::Matrix3d h;
    for (int j = 0; j < 3; ++j) {
        Triple plus = s, minus = s;
        plus[j] += kHessianStep;
        minus[j] -= kHessianStep;
        const Triple gp = grad_perimeter(b, plus), gm = grad_perimeter(b, minus);
        for (int i = 0; i < 3; ++i) h(i, j) = (gp[i] - gm[i]) / (2.0 * kHessianStep);
    }
    return 0.5 * (h + h.transpose());
}

struct NewtonResult {
    Triple s{};
    double grad_norm = 0.0;
    double min_singular = 0.0;
};

std::optional<NewtonResult> newton_critical_point(const BoundaryCurve& b, Triple s)
{
    try {
        Triple g = grad_perimeter(b, s);
        double gn = norm3(g);
        for (int it = 0; it < kMaxNewton && gn > kGradTolerance; ++it) {
            const Eigen::Matrix3d h = fd_hessian(b, s);
            Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
            svd.setThreshold(1e-10);
            const Eigen::Vector3d step = -svd.solve(Eigen::Vector3d(g[0], g[1], g[2]));
            bool accepted = false;
            for (double lambda = 1.0; lambda > 1e-9; lambda *= 0.5) {
                Triple trial{s[0] + lambda * step[0], s[1] + lambda * step[1], s[2] + lambda * step[2]};
                Triple gt;
                try {
                    gt = grad_perimeter(b, trial);
                } catch (const std::exception&) {
                    continue;
                }
                const double gtn = norm3(gt);
                if (gtn < gn) {
                    s = trial, g = gt, gn = gtn;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) break;
        }
        // Roundoff floor of the analytic gradient is a few ulps of O(1) terms;
        // anything above 1e-10 is a failed start.
        if (!(gn <= 1e-10)) return std::nullopt;
        for (double& v : s) v = b.wrap(v);
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(fd_hessian(b, s));
        return NewtonResult{s, gn, svd.singularValues().minCoeff()};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

double triple_distance(const BoundaryCurve& b, const Triple& a, const Triple& c)
{
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < 3; ++r) {
        double d = 0.0;
        for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(b.wrapped_difference(a[i], c[(i + r) % 3])));
        best = std::min(best, d);
    }
    return best;
}

}  // namespace

double perimeter(const BoundaryCurve& b, const Triple& s)
{
    const auto p = vertices_of(b, s);
    return distance(p[0], p[1]) + distance(p[1], p[2]) + distance(p[2], p[0]);
}

Triple grad_perimeter(const BoundaryCurve& b, const Triple& s)
{
    const auto p = vertices_of(b, s);
    const Curvature k = b.curvature();
    Triple g{};
    for (int i = 0; i < 3; ++i) {
        const UnitTangent t = b.tangent_at(s[i]);
        const UnitTangent next = direction_to(p[i], p[(i + 1) % 3]);
        const UnitTangent prev = direction_to(p[i], p[(i + 2) % 3]);
        g[i] = -(inner(k, next.dir, t.dir) + inner(k, prev.dir, t.dir));
    }
    return g;
}

Orbit orbit_from_triple(const BoundaryCurve& b, const Triple& s)
{
    const auto p = vertices_of(b, s);
    const Curvature k = b.curvature();
    Orbit orbit;
    for (int i = 0; i < 3; ++i) {
        const UnitTangent t = b.tangent_at(s[i]);
        const UnitTangent next = direction_to(p[i], p[(i + 1) % 3]);
        orbit.vertices.push_back(b.wrap(s[i]));
        orbit.angles.push_back(std::atan2(inner(k, next.dir, left_normal(t)), inner(k, next.dir, t.dir)));
        orbit.sides.push_back(distance(p[i], p[(i + 1) % 3]));
        orbit.perimeter += orbit.sides.back();
    }
    orbit.final_point = {orbit.vertices[0], orbit.angles[0]};
    return orbit;
}

std::vector<PeriodicOrbit> find_3period(const BoundaryCurve& b, int multistarts, std::uint64_t seed, int workers)
{
    if (multistarts < 1) throw std::invalid_argument("find_3period needs multistarts >= 1");
    const double len = b.total_length();
    std::vector<std::optional<PeriodicOrbit>> found(static_cast<std::size_t>(multistarts));

    parallel_for(found.size(), workers, [&](std::size_t start) {
        const double s0 = len * counter_uniform(seed, start, 0);
        Triple init{};
        for (int i = 0; i < 3; ++i)
            init[i] = s0 + i * len / 3.0 + (i ? (counter_uniform(seed, start, i) - 0.5) * len / 6.0 : 0.0);
        const auto crit = newton_critical_point(b, init);
        if (!crit) return;
        Triple s = crit->s;
        std::sort(s.begin(), s.end());
        try {
            const Orbit orbit = orbit_from_triple(b, s);
            for (int i = 0; i < 3; ++i) {
                if (!(orbit.sides[i] > kMinSide)) return;
                if (!(orbit.angles[i] > kGrazingAngle && orbit.angles[i] < pi - kGrazingAngle)) return;
            }
            const Orbit dyn = iterate(b, {orbit.vertices[0], orbit.angles[0]}, 3);
            const double err = phase_distance(b, dyn.final_point, {orbit.vertices[0], orbit.angles[0]});
            if (!(err < kReturnTolerance)) return;
            for (int i = 1; i < 3; ++i)
                if (std::abs(b.wrapped_difference(dyn.vertices[i], orbit.vertices[i])) > kDedup) return;
            found[start] = PeriodicOrbit{orbit, crit->min_singular < kDegenerateThreshold, crit->min_singular,
                                         crit->grad_norm, err};
        } catch (const std::exception&) {
        }
    });

    std::vector<PeriodicOrbit> unique;
    for (auto& f : found) {
        if (!f) continue;
        const Triple t{f->orbit.vertices[0], f->orbit.vertices[1], f->orbit.vertices[2]};
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const PeriodicOrbit& u) {
            return triple_distance(b, t, {u.orbit.vertices[0], u.orbit.vertices[1], u.orbit.vertices[2]}) < kDedup;
        });
        if (!dup) unique.push_back(std::move(*f));
    }
    std::sort(unique.begin(), unique.end(),
              [](const PeriodicOrbit& a, const PeriodicOrbit& c) { return a.orbit.vertices < c.orbit.vertices; });
    return unique;
}

std::string to_string(OrbitClass c)
{
    switch (c) {
    case OrbitClass::spherical_special_candidate: return "SphericalSpecialCandidate";
    case OrbitClass::degenerate: return "Degenerate";
    default: return "GenericIsolated";
    }
}

CompatibilityReport compatibility_report(const BoundaryCurve& b, const Orbit& orbit, bool degenerate)
{
    if (orbit.size() != 3) throw std::invalid_argument("compatibility_report needs a three-bounce orbit");
    CompatibilityReport r;
    r.orbit = orbit;
    r.kappa = b.curvature();
    r.probe_radius = kGreatCircleProbeRadius;
    const double len = orbit.perimeter;
    try {
        r.f_value = f_of_l(r.kappa, len);
    } catch (const std::domain_error&) {
        r.f_value = std::numeric_limits<double>::quiet_NaN();
    }
    for (int i = 0; i < 3; ++i) {
        r.points[i] = b.point_at(orbit.vertices[i]).coords;
        r.kg[i] = b.geodesic_curvature(orbit.vertices[i]);
        const double sp = std::sin(orbit.angles[i]);
        r.residuals[i] = r.kg[i] - sp * sp * sp * r.f_value;
    }

    bool special = false;
    if (r.kappa == Curvature::spherical) {
        for (int m : {1, 3, 5})
            if (std::abs(len - m * pi) < 1e-6) special = true;
        for (int i = 0; i < 3 && special; ++i) {
            int probed = 0;
            for (double d : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
                const double s = orbit.vertices[i] + d * r.probe_radius;
                if (b.near_corner(s)) continue;
                ++probed;
                if (!(std::abs(b.geodesic_curvature(s)) < 1e-9)) special = false;
            }
            if (probed == 0) special = false;
        }
    }
    r.classification = special      ? OrbitClass::spherical_special_candidate
                       : degenerate ? OrbitClass::degenerate
                                    : OrbitClass::generic_isolated;
    return r;
}

Theorem2Summary classify_theorem2(const std::vector<CompatibilityReport>& reports)
{
    Theorem2Summary out;
    for (std::size_t idx = 0; idx < reports.size(); ++idx) {
        const CompatibilityReport& r = reports[idx];
        switch (r.classification) {
        case OrbitClass::generic_isolated: ++out.generic_isolated; continue;
        case OrbitClass::degenerate: ++out.degenerate; continue;
        default: ++out.special_candidates; break;
        }
        // Plane normal of the great circle through each vertex orthogonal to
        // the interior angle bisector is the bisector itself.
        std::array<Vec3, 3> normals{};
        for (int i = 0; i < 3; ++i) {
            const SurfacePoint p{r.kappa, r.points[i]};
            const Vec3 bis = direction_to(p, {r.kappa, r.points[(i + 1) % 3]}).dir +
                             direction_to(p, {r.kappa, r.points[(i + 2) % 3]}).dir;
            normals[i] = bis * (1.0 / norm(bis));
        }
        SpecialCandidateCheck check;
        check.report_index = idx;
        for (int i = 0; i < 3; ++i)
            check.max_abs_cos = std::max(check.max_abs_cos, std::abs(dot(normals[i], normals[(i + 1) % 3])));
        check.mutually_orthogonal = check.max_abs_cos < 1e-6;
        out.special_checks.push_back(check);
    }
    return out;
}

}  // namespace curvebill
