#include "curvebill/boundary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace curvebill {

namespace {

using std::numbers::pi;

constexpr int kChebDegree = 24;
constexpr int kMinPanels = 8;
constexpr int kMaxPanels = 4096;
constexpr double kClosureTolerance = 1e-10;
constexpr double kCornerAngle = 1e-8;

// Chebyshev coefficients (plain sum convention f = sum a_k T_k) from values at
// first-kind nodes x_j = cos(pi (j + 1/2) / N).
std::vector<double> cheb_coefficients(const std::vector<double>& values)
{
    const int n = static_cast<int>(values.size());
    std::vector<double> a(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += values[j] * std::cos(pi * k * (j + 0.5) / n);
        a[k] = 2.0 * acc / n;
    }
    a[0] *= 0.5;
    return a;
}

double cheb_eval(const std::vector<double>& a, double x)
{
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = a.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + a[0];
}

// Antiderivative coefficients normalized to vanish at x = -1.
std::vector<double> cheb_antiderivative(const std::vector<double>& a)
{
    const std::size_t n = a.size();
    auto coef = [&](std::size_t k) { return k < n ? a[k] : 0.0; };
    std::vector<double> b(n + 1, 0.0);
    b[1] = coef(0) - 0.5 * coef(2);
    for (std::size_t k = 2; k <= n; ++k) b[k] = (coef(k - 1) - coef(k + 1)) / (2.0 * k);
    double at_minus_one = 0.0;
    for (std::size_t k = 1; k <= n; ++k) at_minus_one += (k % 2 ? -b[k] : b[k]);
    b[0] = -at_minus_one;
    return b;
}

// Richardson-extrapolated central differences of a parametric map.
CurveJet fd_jet(const std::function<Vec3(double)>& map, double t, double h)
{
    const Vec3 c0 = map(t);
    const Vec3 p1 = map(t + h), m1 = map(t - h);
    const Vec3 p2 = map(t + 0.5 * h), m2 = map(t - 0.5 * h);
    const Vec3 d1_h = (p1 - m1) * (1.0 / (2.0 * h));
    const Vec3 d1_h2 = (p2 - m2) * (1.0 / h);
    const Vec3 d2_h = (p1 - 2.0 * c0 + m1) * (1.0 / (h * h));
    const Vec3 d2_h2 = (p2 - 2.0 * c0 + m2) * (4.0 / (h * h));
    return {c0, (4.0 * d1_h2 - d1_h) * (1.0 / 3.0), (4.0 * d2_h2 - d2_h) * (1.0 / 3.0)};
}

constexpr double kFdJetStep = 1e-3;

// Geodesic polar coordinates about the base point of each model:
// E^2 origin, S^2 north pole (0,0,1), H^2 apex (1,0,0).
struct PolarFrame {
    Vec3 x, x_r, x_t, x_rr, x_rt, x_tt;
};

PolarFrame polar_frame(Curvature k, double r, double th)
{
    const double c = std::cos(th), s = std::sin(th);
    switch (k) {
    case Curvature::spherical: {
        const double sr = std::sin(r), cr = std::cos(r);
        const Vec3 x{sr * c, sr * s, cr};
        return {x, {cr * c, cr * s, -sr}, {-sr * s, sr * c, 0.0}, -x, {-cr * s, cr * c, 0.0}, {-sr * c, -sr * s, 0.0}};
    }
    case Curvature::hyperbolic: {
        const double sr = std::sinh(r), cr = std::cosh(r);
        const Vec3 x{cr, sr * c, sr * s};
        return {x, {sr, cr * c, cr * s}, {0.0, -sr * s, sr * c}, x, {0.0, -cr * s, cr * c}, {0.0, -sr * c, -sr * s}};
    }
    default:
        return {{r * c, r * s, 0.0}, {c, s, 0.0}, {-r * s, r * c, 0.0}, {}, {-s, c, 0.0}, {-r * c, -r * s, 0.0}};
    }
}

// (rho, theta) of an ambient point.
std::pair<double, double> polar_coordinates(Curvature k, const Vec3& p)
{
    switch (k) {
    case Curvature::spherical: return {std::atan2(std::hypot(p.x, p.y), p.z), std::atan2(p.y, p.x)};
    case Curvature::hyperbolic: return {std::asinh(std::hypot(p.y, p.z)), std::atan2(p.z, p.y)};
    default: return {std::hypot(p.x, p.y), std::atan2(p.y, p.x)};
    }
}

double unit_angle_fraction(double theta)
{
    double t = theta / (2.0 * pi);
    t -= std::floor(t);
    return t >= 1.0 ? 0.0 : t;
}

struct RadialGraph {
    std::function<double(double)> r, dr, ddr;
};

BoundaryCurve radial_curve(Curvature k, RadialGraph g, std::string name)
{
    const double w = 2.0 * pi;
    CurvePiece piece;
    piece.map = [k, g, w](double t) {
        const double th = w * t;
        return polar_frame(k, g.r(th), th).x;
    };
    piece.jet = [k, g, w](double t) {
        const double th = w * t;
        const double r = g.r(th), r1 = g.dr(th), r2 = g.ddr(th);
        const PolarFrame f = polar_frame(k, r, th);
        const Vec3 d1 = f.x_r * r1 + f.x_t;
        const Vec3 d2 = f.x_rr * (r1 * r1) + f.x_rt * (2.0 * r1) + f.x_r * r2 + f.x_tt;
        return CurveJet{f.x, d1 * w, d2 * (w * w)};
    };
    auto level = [k, g](const Vec3& x) {
        const auto [rho, th] = polar_coordinates(k, x);
        return g.r(th) - rho;
    };
    auto locate = [k](const Vec3& x) { return CurveParam{0, unit_angle_fraction(polar_coordinates(k, x).second)}; };
    return BoundaryCurve(k, {std::move(piece)}, level, locate, std::move(name));
}

BoundaryCurve octant_curve()
{
    const std::array<Vec3, 3> e{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::vector<CurvePiece> pieces;
    const double q = 0.5 * pi;
    for (int i = 0; i < 3; ++i) {
        const Vec3 a = e[i], b = e[(i + 1) % 3];
        CurvePiece piece;
        piece.map = [a, b, q](double t) { return std::cos(q * t) * a + std::sin(q * t) * b; };
        piece.jet = [a, b, q](double t) {
            const double c = std::cos(q * t), s = std::sin(q * t);
            const Vec3 x = c * a + s * b;
            return CurveJet{x, (-s * a + c * b) * q, x * (-q * q)};
        };
        piece.is_geodesic_arc = true;
        pieces.push_back(std::move(piece));
    }
    // Piece 0 lies in z = 0, piece 1 in x = 0, piece 2 in y = 0.
    auto level = [](const Vec3& x) { return std::min({x.x, x.y, x.z}); };
    auto locate = [q](const Vec3& x) {
        auto frac = [q](double num, double den) { return std::clamp(std::atan2(num, den) / q, 0.0, 1.0); };
        if (x.z <= x.x && x.z <= x.y) return CurveParam{0, frac(x.y, x.x)};
        if (x.x <= x.y) return CurveParam{1, frac(x.z, x.y)};
        return CurveParam{2, frac(x.x, x.z)};
    };
    return BoundaryCurve(Curvature::spherical, std::move(pieces), level, locate, "octant_s2");
}

BoundaryCurve hemisphere_curve()
{
    const double w = 2.0 * pi;
    CurvePiece piece;
    piece.map = [w](double t) { return Vec3{std::cos(w * t), std::sin(w * t), 0.0}; };
    piece.jet = [w](double t) {
        const double c = std::cos(w * t), s = std::sin(w * t);
        return CurveJet{{c, s, 0.0}, {-w * s, w * c, 0.0}, {-w * w * c, -w * w * s, 0.0}};
    };
    piece.is_geodesic_arc = true;
    auto level = [](const Vec3& x) { return x.z; };
    auto locate = [](const Vec3& x) { return CurveParam{0, unit_angle_fraction(std::atan2(x.y, x.x))}; };
    return BoundaryCurve(Curvature::spherical, {std::move(piece)}, level, locate, "hemisphere_s2");
}

BoundaryCurve ellipse_curve(double a, double b, std::string name)
{
    const double w = 2.0 * pi;
    CurvePiece piece;
    piece.map = [a, b, w](double t) { return Vec3{a * std::cos(w * t), b * std::sin(w * t), 0.0}; };
    piece.jet = [a, b, w](double t) {
        const double c = std::cos(w * t), s = std::sin(w * t);
        return CurveJet{{a * c, b * s, 0.0}, {-w * a * s, w * b * c, 0.0}, {-w * w * a * c, -w * w * b * s, 0.0}};
    };
    auto level = [a, b](const Vec3& x) { return 1.0 - (x.x / a) * (x.x / a) - (x.y / b) * (x.y / b); };
    auto locate = [a, b](const Vec3& x) { return CurveParam{0, unit_angle_fraction(std::atan2(x.y / b, x.x / a))}; };
    return BoundaryCurve(Curvature::flat, {std::move(piece)}, level, locate, std::move(name));
}

// ---- descriptor text form -------------------------------------------------

// Shortest text that parses back to the same double.
std::string format_param(double v)
{
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("invalid number '" + std::string(s) + "'");
    return v;
}

std::string trimmed(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// ---- BoundaryCurve --------------------------------------------------------

BoundaryCurve::BoundaryCurve(Curvature kappa, std::vector<CurvePiece> pieces, LevelFn level, LocateFn locate,
                             std::string name)
{
    if (pieces.empty()) throw std::invalid_argument("boundary needs at least one piece");
    auto impl = std::make_shared<Impl>();
    impl->kappa = kappa;
    impl->name = std::move(name);

    double running = 0.0;
    for (auto& piece : pieces) {
        if (!piece.map) throw std::invalid_argument("boundary piece without a parametric map");
        PieceData pd;
        pd.piece = std::move(piece);
        pd.start = running;

        auto speed = [&](double t) {
            const CurveJet j = piece_jet(pd, t);
            return std::sqrt(std::max(0.0, inner(kappa, j.d1, j.d1)));
        };
        for (int panels = kMinPanels;; panels *= 2) {
            pd.panels.assign(panels, Panel{});
            const double h = 1.0 / panels;
            bool resolved = true;
            double cumulative = 0.0;
            for (int p = 0; p < panels; ++p) {
                std::vector<double> values(kChebDegree);
                for (int j = 0; j < kChebDegree; ++j) {
                    const double x = std::cos(pi * (j + 0.5) / kChebDegree);
                    values[j] = speed(h * (p + 0.5 * (x + 1.0)));
                }
                Panel& panel = pd.panels[p];
                panel.speed = cheb_coefficients(values);
                panel.antiderivative = cheb_antiderivative(panel.speed);
                panel.cumulative = cumulative;
                double full = 0.0;
                for (double b : panel.antiderivative) full += b;
                panel.length = 0.5 * h * full;
                cumulative += panel.length;
                const double tail = std::abs(panel.speed[kChebDegree - 1]) + std::abs(panel.speed[kChebDegree - 2]);
                if (tail > 1e-14 * std::max(std::abs(panel.speed[0]), 1e-300)) resolved = false;
            }
            pd.length = cumulative;
            if (resolved || panels >= kMaxPanels) break;
        }
        if (!(pd.length > 0.0)) throw std::invalid_argument("boundary piece has zero length");
        running += pd.length;
        impl->pieces.push_back(std::move(pd));
    }
    impl->total_length = running;

    const std::size_t n = impl->pieces.size();
    for (std::size_t i = 0; i < n; ++i) {
        const PieceData& cur = impl->pieces[i];
        const PieceData& next = impl->pieces[(i + 1) % n];
        const CurveJet end = piece_jet(cur, 1.0);
        const CurveJet begin = piece_jet(next, 0.0);
        if (norm(end.point - begin.point) > kClosureTolerance)
            throw std::invalid_argument("boundary is not closed / continuous at piece " + std::to_string(i));
        const Vec3 te = end.d1 * (1.0 / std::sqrt(inner(kappa, end.d1, end.d1)));
        const Vec3 tb = begin.d1 * (1.0 / std::sqrt(inner(kappa, begin.d1, begin.d1)));
        if (norm(te - tb) > kCornerAngle) impl->corners.push_back(i + 1 == n ? 0.0 : next.start);
    }
    std::sort(impl->corners.begin(), impl->corners.end());

    impl->max_chord = kappa == Curvature::spherical ? 2.0 * pi : 0.5 * impl->total_length + 1e-9;

    impl_ = impl;

    if (!locate) {
        // Generic closest-point search on a sampled polyline, refined by Newton
        // on the squared ambient distance.
        constexpr int kSamples = 256;
        struct Sample {
            std::size_t piece;
            double t;
            Vec3 x;
        };
        auto samples = std::make_shared<std::vector<Sample>>();
        for (std::size_t i = 0; i < n; ++i)
            for (int j = 0; j <= kSamples; ++j) {
                const double t = static_cast<double>(j) / kSamples;
                samples->push_back({i, t, impl->pieces[i].piece.map(t)});
            }
        const Impl* self = impl.get();
        locate = [samples, self](const Vec3& x) {
            const Sample* best = &samples->front();
            double best_d = std::numeric_limits<double>::infinity();
            for (const Sample& s : *samples) {
                const double d = dot(s.x - x, s.x - x);
                if (d < best_d) best_d = d, best = &s;
            }
            CurveParam p{best->piece, best->t};
            for (int it = 0; it < 20; ++it) {
                const CurveJet j = piece_jet(self->pieces[p.piece], p.t);
                const Vec3 diff = j.point - x;
                const double g1 = dot(j.d1, diff);
                const double g2 = dot(j.d2, diff) + dot(j.d1, j.d1);
                if (!(g2 > 0.0)) break;
                const double step = g1 / g2;
                p.t = std::clamp(p.t - step, 0.0, 1.0);
                if (std::abs(step) < 1e-15) break;
            }
            return p;
        };
    }
    if (!level) {
        const Impl* self = impl.get();
        level = [self, locate](const Vec3& x) {
            const CurveParam p = locate(x);
            const CurveJet j = piece_jet(self->pieces[p.piece], p.t);
            const Curvature k = self->kappa;
            const Vec3 t = j.d1 * (1.0 / std::sqrt(inner(k, j.d1, j.d1)));
            return inner(k, x - j.point, left_normal(k, j.point, t));
        };
    }
    impl->level = std::move(level);
    impl->locate = std::move(locate);
}

CurveJet BoundaryCurve::piece_jet(const PieceData& pd, double t)
{
    if (pd.piece.jet) return pd.piece.jet(t);
    return fd_jet(pd.piece.map, t, kFdJetStep);
}

double BoundaryCurve::piece_arclength(const PieceData& pd, double t)
{
    const std::size_t panels = pd.panels.size();
    const double h = 1.0 / static_cast<double>(panels);
    const std::size_t p = std::min(static_cast<std::size_t>(std::max(t, 0.0) * panels), panels - 1);
    const Panel& panel = pd.panels[p];
    const double x = std::clamp(2.0 * (t - p * h) / h - 1.0, -1.0, 1.0);
    return panel.cumulative + 0.5 * h * cheb_eval(panel.antiderivative, x);
}

double BoundaryCurve::wrap(double s) const
{
    const double len = impl_->total_length;
    double r = std::fmod(s, len);
    if (r < 0.0) r += len;
    if (r >= len) r = 0.0;
    return r;
}

double BoundaryCurve::wrapped_difference(double a, double b) const
{
    const double len = impl_->total_length;
    double d = std::fmod(a - b, len);
    if (d < -0.5 * len) d += len;
    if (d >= 0.5 * len) d -= len;
    return d;
}

bool BoundaryCurve::near_corner(double s) const
{
    for (double c : impl_->corners)
        if (std::abs(wrapped_difference(s, c)) < kCornerTolerance) return true;
    return false;
}

CurveParam BoundaryCurve::param_at(double s) const
{
    s = wrap(s);
    const auto& pieces = impl_->pieces;
    auto it = std::upper_bound(pieces.begin(), pieces.end(), s,
                               [](double v, const PieceData& pd) { return v < pd.start; });
    const std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - pieces.begin()) - 1));
    const PieceData& pd = pieces[i];
    const double sigma = std::clamp(s - pd.start, 0.0, pd.length);

    auto pit = std::upper_bound(pd.panels.begin(), pd.panels.end(), sigma,
                                [](double v, const Panel& p) { return v < p.cumulative; });
    const std::size_t p = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (pit - pd.panels.begin()) - 1));
    const Panel& panel = pd.panels[p];
    const double h = 1.0 / static_cast<double>(pd.panels.size());
    const double local = sigma - panel.cumulative;

    double x = panel.length > 0.0 ? std::clamp(-1.0 + 2.0 * local / panel.length, -1.0, 1.0) : -1.0;
    for (int it_n = 0; it_n < 30; ++it_n) {
        const double f = 0.5 * h * cheb_eval(panel.antiderivative, x) - local;
        const double df = 0.5 * h * cheb_eval(panel.speed, x);
        if (!(df > 0.0)) break;
        const double step = f / df;
        const double next = std::clamp(x - step, -1.0, 1.0);
        const bool done = std::abs(next - x) < 4e-16;
        x = next;
        if (done) break;
    }
    return {i, std::clamp(h * (p + 0.5 * (x + 1.0)), 0.0, 1.0)};
}

double BoundaryCurve::arclength_at(const CurveParam& p) const
{
    const PieceData& pd = impl_->pieces.at(p.piece);
    return wrap(pd.start + piece_arclength(pd, p.t));
}

CurveJet BoundaryCurve::jet(const CurveParam& p) const { return piece_jet(impl_->pieces.at(p.piece), p.t); }

SurfacePoint BoundaryCurve::point_at(double s) const
{
    const CurveParam p = param_at(s);
    return renormalized(SurfacePoint{impl_->kappa, impl_->pieces[p.piece].piece.map(p.t)});
}

UnitTangent BoundaryCurve::tangent_at(const CurveParam& p) const
{
    const CurveJet j = jet(p);
    return renormalized(UnitTangent{{impl_->kappa, j.point}, j.d1});
}

UnitTangent BoundaryCurve::tangent_at(double s) const
{
    if (near_corner(s)) throw CornerHit("tangent requested at a corner (s = " + format_param(s) + ")");
    return tangent_at(param_at(s));
}

double BoundaryCurve::kg_from_jet(const CurveJet& j) const
{
    const Curvature k = impl_->kappa;
    const double speed2 = inner(k, j.d1, j.d1);
    const Vec3 t = j.d1 * (1.0 / std::sqrt(speed2));
    return inner(k, j.d2, left_normal(k, j.point, t)) / speed2;
}

double BoundaryCurve::geodesic_curvature(double s) const
{
    if (near_corner(s)) throw CornerHit("geodesic curvature requested at a corner (s = " + format_param(s) + ")");
    return kg_from_jet(jet(param_at(s)));
}

double BoundaryCurve::geodesic_curvature_fd(double s) const
{
    if (near_corner(s)) throw CornerHit("geodesic curvature requested at a corner (s = " + format_param(s) + ")");
    const CurveParam p = param_at(s);
    return kg_from_jet(fd_jet(impl_->pieces[p.piece].piece.map, p.t, kFdJetStep));
}

// ---- families -------------------------------------------------------------

std::string to_string(const FamilyDescriptor& d)
{
    struct Visitor {
        std::string operator()(const GeodesicCircle& c) const
        {
            return "geodesic_circle(kappa=" + std::to_string(to_int(c.kappa)) + ",r=" + format_param(c.radius) + ")";
        }
        std::string operator()(const EuclideanEllipse& e) const
        {
            return "ellipse_euclidean(a=" + format_param(e.a) + ",b=" + format_param(e.b) + ")";
        }
        std::string operator()(const FourierPerturbedCircle& f) const
        {
            std::string amps;
            for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
                amps += (i ? " " : "") + format_param(f.amplitudes[i]);
            return "fourier_perturbed_circle(kappa=" + std::to_string(to_int(f.kappa)) + ",r=" +
                   format_param(f.radius) + ",amplitudes=[" + amps + "])";
        }
        std::string operator()(const SphericalOctant&) const { return "octant_s2"; }
        std::string operator()(const Hemisphere&) const { return "hemisphere_s2"; }
    };
    return std::visit(Visitor{}, d);
}

FamilyDescriptor parse_family(std::string_view text)
{
    const std::string src = trimmed(text);
    const auto open = src.find('(');
    const std::string name = trimmed(src.substr(0, open));
    std::vector<std::pair<std::string, std::string>> args;
    if (open != std::string::npos) {
        if (src.back() != ')') throw std::invalid_argument("table descriptor missing ')': " + src);
        const std::string body = src.substr(open + 1, src.size() - open - 2);
        int depth = 0;
        std::string current;
        auto flush = [&] {
            const std::string item = trimmed(current);
            current.clear();
            if (item.empty()) return;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + item + "'");
            args.emplace_back(trimmed(item.substr(0, eq)), trimmed(item.substr(eq + 1)));
        };
        for (char ch : body) {
            if (ch == '[') ++depth;
            if (ch == ']') --depth;
            if (ch == ',' && depth == 0) flush();
            else current += ch;
        }
        flush();
    }

    auto take = [&](const std::string& key) -> std::string {
        for (auto it = args.begin(); it != args.end(); ++it)
            if (it->first == key) {
                std::string v = it->second;
                args.erase(it);
                return v;
            }
        throw std::invalid_argument("table '" + name + "' needs parameter '" + key + "'");
    };
    auto take_kappa = [&] {
        const double v = parse_double(take("kappa"));
        if (v != std::floor(v)) throw std::invalid_argument("kappa must be an integer");
        return curvature_from_int(static_cast<int>(v));
    };
    auto finish = [&](FamilyDescriptor d) {
        if (!args.empty()) throw std::invalid_argument("unknown parameter '" + args.front().first + "' for " + name);
        return d;
    };

    if (name == "geodesic_circle") {
        GeodesicCircle c;
        c.kappa = take_kappa();
        c.radius = parse_double(take("r"));
        return finish(c);
    }
    if (name == "ellipse_euclidean") {
        EuclideanEllipse e;
        e.a = parse_double(take("a"));
        e.b = parse_double(take("b"));
        return finish(e);
    }
    if (name == "fourier_perturbed_circle") {
        FourierPerturbedCircle f;
        f.kappa = take_kappa();
        f.radius = parse_double(take("r"));
        std::string list = take("amplitudes");
        if (list.size() < 2 || list.front() != '[' || list.back() != ']')
            throw std::invalid_argument("amplitudes must be a bracketed list, e.g. [0 0.01]");
        std::istringstream in(list.substr(1, list.size() - 2));
        for (std::string tok; in >> tok;) f.amplitudes.push_back(parse_double(tok));
        return finish(f);
    }
    if (name == "octant_s2") return finish(SphericalOctant{});
    if (name == "hemisphere_s2") return finish(Hemisphere{});
    throw std::invalid_argument("unknown table family '" + name + "'");
}

BoundaryCurve make_family(const FamilyDescriptor& d)
{
    const std::string name = to_string(d);
    if (const auto* c = std::get_if<GeodesicCircle>(&d)) {
        const double r = c->radius;
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("geodesic circle radius must be positive");
        if (c->kappa == Curvature::spherical && !(r < 0.5 * pi))
            throw std::invalid_argument("spherical geodesic circle radius must be < pi/2");
        return radial_curve(c->kappa,
                            {[r](double) { return r; }, [](double) { return 0.0; }, [](double) { return 0.0; }}, name);
    }
    if (const auto* e = std::get_if<EuclideanEllipse>(&d)) {
        if (!(e->a > 0.0) || !(e->b > 0.0) || !std::isfinite(e->a) || !std::isfinite(e->b))
            throw std::invalid_argument("ellipse semi-axes must be positive");
        return ellipse_curve(e->a, e->b, name);
    }
    if (const auto* f = std::get_if<FourierPerturbedCircle>(&d)) {
        const double r0 = f->radius;
        const std::vector<double> amps = f->amplitudes;
        if (!(r0 > 0.0) || !std::isfinite(r0)) throw std::invalid_argument("perturbed circle radius must be positive");
        RadialGraph g;
        g.r = [r0, amps](double th) {
            double r = r0;
            for (std::size_t i = 0; i < amps.size(); ++i) r += amps[i] * std::cos((i + 1.0) * th);
            return r;
        };
        g.dr = [amps](double th) {
            double r = 0.0;
            for (std::size_t i = 0; i < amps.size(); ++i) r -= amps[i] * (i + 1.0) * std::sin((i + 1.0) * th);
            return r;
        };
        g.ddr = [amps](double th) {
            double r = 0.0;
            for (std::size_t i = 0; i < amps.size(); ++i) r -= amps[i] * (i + 1.0) * (i + 1.0) * std::cos((i + 1.0) * th);
            return r;
        };
        const double upper = f->kappa == Curvature::spherical ? 0.5 * pi : std::numeric_limits<double>::infinity();
        for (int j = 0; j < 4096; ++j) {
            const double r = g.r(2.0 * pi * j / 4096.0);
            if (!(r > 0.0) || !(r < upper))
                throw std::invalid_argument("perturbed radius leaves the admissible range");
        }
        return radial_curve(f->kappa, g, name);
    }
    if (std::holds_alternative<SphericalOctant>(d)) return octant_curve();
    return hemisphere_curve();
}

}  // namespace curvebill
