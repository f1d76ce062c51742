#include "curvebill/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvebill/billiard.hpp"
#include "curvebill/measure.hpp"
#include "curvebill/periodic.hpp"
#include "curvebill/random.hpp"

namespace curvebill {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Curvature kAll[] = {Curvature::flat, Curvature::spherical, Curvature::hyperbolic};

struct Draws {
    std::uint64_t seed;
    std::uint64_t stream;
    double operator()(std::size_t i, std::uint64_t k, double lo, double hi) const
    {
        return lo + (hi - lo) * counter_uniform(seed, i, stream * 64 + k);
    }
};

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// Entrywise difference scaled by the size of the entries, so hyperbolic
// growth does not eat the roundoff budget.
double scaled_diff(const JacobiMatrix& a, const JacobiMatrix& b)
{
    double scale = 1.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) scale = std::max({scale, std::abs(a(r, c)), std::abs(b(r, c))});
    return a.max_abs_diff(b) / scale;
}

UnitTangent random_tangent(Curvature k, const Draws& d, std::size_t i)
{
    const double a = d(i, 0, -1.0, 1.0), b = d(i, 1, -1.0, 1.0), ang = d(i, 2, 0.0, 2.0 * kPi);
    SurfacePoint p;
    switch (k) {
    case Curvature::spherical: {
        const double z = d(i, 3, -1.0, 1.0), r = std::sqrt(1.0 - z * z);
        p = make_point(k, {r * std::cos(ang), r * std::sin(ang), z});
        break;
    }
    case Curvature::hyperbolic:
        p = make_point(k, {std::sqrt(1.0 + a * a + b * b), a, b});
        break;
    default: p = make_point(k, {a, b, 0.0}); break;
    }
    // Build an orthonormal tangent frame, then rotate by a random angle.
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
    const double th = d(i, 4, 0.0, 2.0 * kPi);
    return make_tangent(p, std::cos(th) * t + std::sin(th) * left_normal(u));
}

}  // namespace

std::vector<CheckResult> check_group_law(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    for (Curvature k : kAll) {
        const Draws d{opt.seed, 1 + static_cast<std::uint64_t>(to_int(k) + 1)};
        double det_err = 0.0, law_err = 0.0, inv_err = 0.0;
        for (std::size_t i = 0; i < opt.draws; ++i) {
            const double a = d(i, 0, -2.0, 2.0), b = d(i, 1, -2.0, 2.0);
            const JacobiMatrix pa = evolution(k, a, opt.jacobi), pb = evolution(k, b, opt.jacobi);
            det_err = std::max(det_err, std::abs(pa.determinant() - 1.0));
            law_err = std::max(law_err, scaled_diff(pa * pb, evolution(k, a + b, opt.jacobi)));
            inv_err = std::max(inv_err, scaled_diff(pa.inverse(), evolution(k, -a, opt.jacobi)));
        }
        const bool pass = det_err <= 1e-12 && law_err <= 1e-12 && inv_err <= 1e-12;
        out.push_back({"group-law " + to_string(k), pass,
                       "det " + fmt(det_err) + ", P(a)P(b) " + fmt(law_err) + ", inverse " + fmt(inv_err)});
    }
    return out;
}

std::vector<CheckResult> check_top_right_identity(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    for (Curvature k : {Curvature::hyperbolic, Curvature::spherical}) {
        const Draws d{opt.seed, 8 + static_cast<std::uint64_t>(to_int(k) + 1)};
        double worst = 0.0;
        for (std::size_t i = 0; i < opt.draws; ++i) {
            ThreeBounceInput in;
            in.kappa = k;
            in.x = d(i, 0, 0.1, 2.0);
            in.y = d(i, 1, 0.1, 2.0);
            in.z = d(i, 2, 0.1, 2.0);
            for (int j = 0; j < 3; ++j) {
                in.phi[j] = d(i, 3 + j, 0.2, kPi - 0.2);
                in.kg[j] = d(i, 6 + j, -2.0, 2.0);
            }
            const TopRightSplit t = top_right_split(in, opt.jacobi);
            worst = std::max(worst, std::abs(t.product_mismatch - t.closed_form));
        }
        out.push_back({"top-right-identity " + to_string(k), worst <= 1e-10, "max mismatch " + fmt(worst)});
    }
    return out;
}

std::vector<CheckResult> check_trace_conjugacy(const VerifyOptions& opt)
{
    const FamilyDescriptor tables[] = {
        GeodesicCircle{Curvature::flat, 1.0},
        GeodesicCircle{Curvature::spherical, 1.0},
        GeodesicCircle{Curvature::hyperbolic, 1.0},
        FourierPerturbedCircle{Curvature::hyperbolic, 1.0, {0.0, 0.05, 0.03}},
    };
    std::vector<CheckResult> out;
    for (const FamilyDescriptor& fd : tables) {
        const BoundaryCurve b = make_family(fd);
        const auto orbits = find_3period(b, opt.multistarts, opt.seed, opt.workers);
        double worst = 0.0;
        for (const PeriodicOrbit& po : orbits) {
            const double tj = d3_jacobi(b, po.orbit, opt.jacobi).trace();
            const auto fd3 = d3_finite_difference(b, {po.orbit.vertices[0], po.orbit.angles[0]});
            const double tf = fd3[0][0] + fd3[1][1];
            worst = std::max(worst, std::abs(tj - tf) / std::max(1.0, std::abs(tf)));
        }
        const bool pass = !orbits.empty() && worst <= 1e-4;
        out.push_back({"trace-conjugacy " + to_string(fd), pass,
                       std::to_string(orbits.size()) + " orbits, max rel diff " + fmt(worst)});
    }
    return out;
}

std::vector<CheckResult> check_law_of_cosines(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    for (Curvature k : kAll) {
        const Draws d{opt.seed, 16 + static_cast<std::uint64_t>(to_int(k) + 1)};
        double worst = 0.0;
        for (std::size_t i = 0; i < opt.draws; ++i) {
            const UnitTangent u = random_tangent(k, d, i);
            const double x = d(i, 10, 0.2, 1.5), z = d(i, 11, 0.2, 1.5), th = d(i, 12, 0.3, kPi - 0.3);
            const UnitTangent v = make_tangent(u.base, std::cos(th) * u.dir + std::sin(th) * left_normal(u));
            const double side = distance(geodesic_flow(u, x).base, geodesic_flow(v, z).base);
            worst = std::max(worst, std::abs(side - law_of_cosines_side(x, z, th, k)));
        }
        out.push_back({"law-of-cosines " + to_string(k), worst <= 1e-9, "max closure error " + fmt(worst)});
    }
    return out;
}

std::vector<CheckResult> check_mu_invariance(const VerifyOptions& opt)
{
    std::vector<CheckResult> out;
    auto summary = [](const InvarianceReport& r) {
        std::string s;
        for (const InvarianceCheck& c : r.checks) {
            if (!s.empty()) s += ", ";
            s += c.function + " " + fmt(c.mean_after - c.mean_before) + "/" + fmt(3.0 * c.combined_stderr);
        }
        return s;
    };
    for (Curvature k : kAll) {
        const GeodesicCircle fd{k, 1.0};
        const InvarianceReport r = invariance_test(make_family(fd), opt.invariance_n, opt.seed, opt.workers);
        out.push_back({"mu-invariance " + to_string(FamilyDescriptor{fd}), r.pass, summary(r)});
    }
    const FamilyDescriptor stretched = EuclideanEllipse{2.0, 1.0};
    const BoundaryCurve b = make_family(stretched);
    const InvarianceReport wrong =
        invariance_test(b, sample_uniform_angle(b, opt.invariance_n, opt.seed), opt.workers);
    out.push_back({"uniform-angle sampler rejected on " + to_string(stretched), !wrong.pass, summary(wrong)});
    return out;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt)
{
    std::vector<CheckResult> all;
    for (auto* check : {check_group_law, check_top_right_identity, check_trace_conjugacy, check_law_of_cosines,
                        check_mu_invariance}) {
        auto part = check(opt);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

}  // namespace curvebill
