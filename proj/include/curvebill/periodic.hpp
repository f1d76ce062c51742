#pragma once

// Three-period orbits: variational search on the inscribed-triangle
// perimeter, the compatibility residual k_g - sin^3(phi) F(L) at each vertex,
// and classification of spherical positive-measure candidates.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curvebill/billiard.hpp"

namespace curvebill {

using Triple = std::array<double, 3>;

/// Sum of the three geodesic side lengths of the inscribed triangle with
/// vertices point_at(s[i]). Throws std::domain_error if two vertices are
/// within 1e-9 of each other.
double perimeter(const BoundaryCurve& b, const Triple& s);

/// Analytic first variation: dL/ds_i = -<u_i,next + u_i,prev, T_i>, where
/// u are the unit initial directions of the two sides at vertex i. Vanishes
/// exactly when the two sides make equal angles with the tangent.
Triple grad_perimeter(const BoundaryCurve& b, const Triple& s);

/// Inscribed triangle visited in the given vertex order, with outgoing angles
/// computed from the side directions. No dynamics involved.
Orbit orbit_from_triple(const BoundaryCurve& b, const Triple& s);

struct PeriodicOrbit {
    Orbit orbit;
    bool degenerate = false;            // perimeter Hessian numerically singular
    double hessian_min_singular = 0.0;
    double gradient_norm = 0.0;
    double return_error = 0.0;          // phase distance after three bounces
};

inline constexpr double kDegenerateThreshold = 1e-8;

/// Damped Newton on grad_perimeter = 0 from `multistarts` random triples.
/// Results are deduplicated up to relabeling, verified by iterating the
/// billiard map, and returned sorted by vertex positions; the output does not
/// depend on `workers`.
std::vector<PeriodicOrbit> find_3period(const BoundaryCurve& b, int multistarts, std::uint64_t seed,
                                        int workers = 1);

enum class OrbitClass { generic_isolated, spherical_special_candidate, degenerate };
std::string to_string(OrbitClass c);

struct CompatibilityReport {
    Orbit orbit;
    Curvature kappa = Curvature::flat;
    std::array<Vec3, 3> points{};
    std::array<double, 3> kg{};
    std::array<double, 3> residuals{};
    double f_value = 0.0;
    OrbitClass classification = OrbitClass::generic_isolated;
    /// Half-width of the arclength window probed for vanishing k_g.
    double probe_radius = 0.0;
};

inline constexpr double kGreatCircleProbeRadius = 0.01;

CompatibilityReport compatibility_report(const BoundaryCurve& b, const Orbit& orbit, bool degenerate = false);
inline CompatibilityReport compatibility_report(const BoundaryCurve& b, const PeriodicOrbit& p)
{
    return compatibility_report(b, p.orbit, p.degenerate);
}

struct SpecialCandidateCheck {
    std::size_t report_index = 0;
    /// Largest |cos| of the angle between two of the great circles through the
    /// vertices orthogonal to the angle bisectors.
    double max_abs_cos = 0.0;
    bool mutually_orthogonal = false;
};

struct Theorem2Summary {
    std::size_t generic_isolated = 0;
    std::size_t special_candidates = 0;
    std::size_t degenerate = 0;
    std::vector<SpecialCandidateCheck> special_checks;
};

Theorem2Summary classify_theorem2(const std::vector<CompatibilityReport>& reports);

}  // namespace curvebill
