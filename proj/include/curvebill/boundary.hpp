#pragma once

// Closed billiard boundaries on the model surfaces.
//
// A boundary is a cyclic list of smooth pieces, each a parametric map
// t in [0, 1] -> surface. The curve is traversed with the billiard domain on
// its left, so convex tables have positive geodesic curvature. Junctions with
// a tangent discontinuity are corners; the billiard map is undefined there.
//
// Simplicity (no self-intersection) is guaranteed for the built-in families
// only. Curves assembled from user pieces are not checked.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "curvebill/errors.hpp"
#include "curvebill/surface.hpp"

namespace curvebill {

inline constexpr double kCornerTolerance = 1e-7;

/// Point and first two derivatives with respect to the piece parameter.
struct CurveJet {
    Vec3 point;
    Vec3 d1;
    Vec3 d2;
};

struct CurvePiece {
    std::function<Vec3(double)> map;
    /// Optional analytic derivatives. When empty, derivatives come from
    /// central differences of `map`, which must then be defined slightly
    /// beyond [0, 1].
    std::function<CurveJet(double)> jet;
    bool is_geodesic_arc = false;
};

struct CurveParam {
    std::size_t piece = 0;
    double t = 0.0;
};

class BoundaryCurve {
public:
    /// Signed level function: > 0 inside the table, < 0 outside, 0 on the
    /// curve. Used by the collision solver.
    using LevelFn = std::function<double(const Vec3&)>;
    /// Parameter of the curve point closest to an ambient point lying on
    /// (or within roundoff of) the curve.
    using LocateFn = std::function<CurveParam(const Vec3&)>;

    /// When `level` / `locate` are omitted, a generic closest-point search on
    /// a sampled polyline with Newton refinement is used. It is far slower
    /// than the analytic versions supplied by the built-in families.
    BoundaryCurve(Curvature kappa, std::vector<CurvePiece> pieces, LevelFn level = {},
                  LocateFn locate = {}, std::string name = "custom");

    Curvature curvature() const { return impl_->kappa; }
    double total_length() const { return impl_->total_length; }
    const std::string& name() const { return impl_->name; }
    const std::vector<double>& corners() const { return impl_->corners; }
    std::size_t piece_count() const { return impl_->pieces.size(); }
    bool is_geodesic_arc(std::size_t piece) const { return impl_->pieces.at(piece).piece.is_geodesic_arc; }
    /// Upper bound on the length of a boundary-to-boundary geodesic chord.
    double max_chord() const { return impl_->max_chord; }

    /// s reduced to [0, total_length).
    double wrap(double s) const;
    /// a - b reduced to [-total_length/2, total_length/2).
    double wrapped_difference(double a, double b) const;
    bool near_corner(double s) const;

    CurveParam param_at(double s) const;
    double arclength_at(const CurveParam& p) const;
    CurveJet jet(const CurveParam& p) const;

    SurfacePoint point_at(double s) const;
    /// Throws CornerHit within kCornerTolerance of a corner.
    UnitTangent tangent_at(double s) const;
    UnitTangent tangent_at(const CurveParam& p) const;
    /// Signed geodesic curvature, positive where the curve bends towards the
    /// domain. Throws CornerHit near corners.
    double geodesic_curvature(double s) const;
    /// Independent estimate from point evaluations only: Richardson-extrapolated
    /// central differences of the parametric map.
    double geodesic_curvature_fd(double s) const;

    double level(const Vec3& x) const { return impl_->level(x); }
    CurveParam locate(const Vec3& x) const { return impl_->locate(x); }

private:
    struct Panel {
        double cumulative = 0.0;  // arclength from piece start to panel start
        double length = 0.0;
        std::vector<double> speed;         // Chebyshev coefficients of |c'(t)|
        std::vector<double> antiderivative;  // Chebyshev coefficients, zero at the left end
    };
    struct PieceData {
        CurvePiece piece;
        double start = 0.0;  // arclength at t = 0
        double length = 0.0;
        std::vector<Panel> panels;
    };
    struct Impl {
        Curvature kappa = Curvature::flat;
        std::string name;
        std::vector<PieceData> pieces;
        std::vector<double> corners;
        double total_length = 0.0;
        double max_chord = 0.0;
        LevelFn level;
        LocateFn locate;
    };

    static CurveJet piece_jet(const PieceData& pd, double t);
    static double piece_arclength(const PieceData& pd, double t);
    double kg_from_jet(const CurveJet& j) const;

    std::shared_ptr<const Impl> impl_;
};

struct GeodesicCircle {
    Curvature kappa = Curvature::flat;
    double radius = 1.0;
    friend bool operator==(const GeodesicCircle&, const GeodesicCircle&) = default;
};

struct EuclideanEllipse {
    double a = 1.0;
    double b = 1.0;
    friend bool operator==(const EuclideanEllipse&, const EuclideanEllipse&) = default;
};

/// Radial graph rho(theta) = radius + sum_k amplitudes[k-1] cos(k theta) in
/// geodesic polar coordinates about the model's base point.
struct FourierPerturbedCircle {
    Curvature kappa = Curvature::flat;
    double radius = 1.0;
    std::vector<double> amplitudes;
    friend bool operator==(const FourierPerturbedCircle&, const FourierPerturbedCircle&) = default;
};

/// Spherical triangle bounded by the three coordinate great circles.
struct SphericalOctant {
    friend bool operator==(const SphericalOctant&, const SphericalOctant&) = default;
};

/// Northern hemisphere of S^2, bounded by the equator.
struct Hemisphere {
    friend bool operator==(const Hemisphere&, const Hemisphere&) = default;
};

using FamilyDescriptor =
    std::variant<GeodesicCircle, EuclideanEllipse, FourierPerturbedCircle, SphericalOctant, Hemisphere>;

/// Text form, e.g. "geodesic_circle(kappa=-1,r=1)",
/// "ellipse_euclidean(a=1.2,b=1)",
/// "fourier_perturbed_circle(kappa=-1,r=1,amplitudes=[0 0.01])",
/// "octant_s2", "hemisphere_s2". Numbers use the shortest round-trip form, so
/// parse_family(to_string(d)) reproduces d exactly.
std::string to_string(const FamilyDescriptor& d);
FamilyDescriptor parse_family(std::string_view text);

/// Throws std::invalid_argument on invalid parameters (non-positive radius,
/// spherical radius >= pi/2, radial graphs leaving the admissible range).
/// Perturbations that destroy simplicity are not detected.
BoundaryCurve make_family(const FamilyDescriptor& d);

}  // namespace curvebill
