#pragma once

// Shared helpers for the test suites: seeded generators for property tests
// and the table list the properties sweep over.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "curvebill/boundary.hpp"
#include "curvebill/surface.hpp"

namespace testing {

using namespace curvebill;

inline constexpr double kPi = std::numbers::pi;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    SurfacePoint point(Curvature k)
    {
        switch (k) {
        case Curvature::spherical: {
            const double z = uniform(-1.0, 1.0), a = uniform(0.0, 2.0 * kPi), r = std::sqrt(1.0 - z * z);
            return make_point(k, {r * std::cos(a), r * std::sin(a), z});
        }
        case Curvature::hyperbolic: {
            const double y = uniform(-1.5, 1.5), z = uniform(-1.5, 1.5);
            return make_point(k, {std::sqrt(1.0 + y * y + z * z), y, z});
        }
        default: return make_point(k, {uniform(-2.0, 2.0), uniform(-2.0, 2.0), 0.0});
        }
    }

    // Random unit tangent: any tangent vector rotated by a random angle.
    UnitTangent tangent(Curvature k)
    {
        const SurfacePoint p = point(k);
        Vec3 t{1.0, 0.0, 0.0};
        if (k != Curvature::flat) {
            for (Vec3 e : {Vec3{0.3, -0.7, 0.6}, Vec3{0.9, 0.1, -0.4}}) {
                const double s = inner(k, e, p.coords);
                t = k == Curvature::hyperbolic ? e + s * p.coords : e - s * p.coords;
                if (inner(k, t, t) > 1e-2) break;
            }
        }
        t = (1.0 / std::sqrt(inner(k, t, t))) * t;
        const UnitTangent u = make_tangent(p, t);
        const double th = uniform(0.0, 2.0 * kPi);
        return make_tangent(p, std::cos(th) * t + std::sin(th) * left_normal(u));
    }

private:
    std::mt19937_64 rng_;
};

inline const std::vector<Curvature>& geometries()
{
    static const std::vector<Curvature> g{Curvature::flat, Curvature::spherical, Curvature::hyperbolic};
    return g;
}

inline std::vector<FamilyDescriptor> builtin_tables()
{
    return {
        GeodesicCircle{Curvature::flat, 1.0},
        GeodesicCircle{Curvature::flat, 2.0},
        GeodesicCircle{Curvature::spherical, 1.0},
        GeodesicCircle{Curvature::spherical, kPi / 4},
        GeodesicCircle{Curvature::hyperbolic, 1.0},
        EuclideanEllipse{1.2, 1.0},
        EuclideanEllipse{2.0, 1.0},
        FourierPerturbedCircle{Curvature::flat, 1.0, {0.0, 0.05, 0.02}},
        FourierPerturbedCircle{Curvature::spherical, 0.8, {0.0, 0.04, 0.03}},
        FourierPerturbedCircle{Curvature::hyperbolic, 1.0, {0.0, 0.01}},
        FourierPerturbedCircle{Curvature::hyperbolic, 1.0, {0.0, 0.05, 0.03}},
        SphericalOctant{},
        Hemisphere{},
    };
}

inline double max_abs_diff(const Vec3& a, const Vec3& b)
{
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace testing
