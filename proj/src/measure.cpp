#include "curvebill/measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "curvebill/parallel.hpp"
#include "curvebill/random.hpp"

namespace curvebill {

namespace {

constexpr std::uint64_t kStreamS = 0;
constexpr std::uint64_t kStreamPhi = 1;

}  // namespace

std::vector<PhasePoint> sample_mu(const BoundaryCurve& b, std::size_t n, std::uint64_t seed)
{
    std::vector<PhasePoint> out(n);
    const double len = b.total_length();
    for (std::size_t i = 0; i < n; ++i) {
        out[i].s = len * counter_uniform(seed, i, kStreamS);
        out[i].phi = std::acos(1.0 - 2.0 * counter_uniform(seed, i, kStreamPhi));
    }
    return out;
}

std::vector<PhasePoint> sample_uniform_angle(const BoundaryCurve& b, std::size_t n, std::uint64_t seed)
{
    std::vector<PhasePoint> out(n);
    const double len = b.total_length();
    for (std::size_t i = 0; i < n; ++i) {
        out[i].s = len * counter_uniform(seed, i, kStreamS);
        out[i].phi = std::numbers::pi * counter_uniform(seed, i, kStreamPhi);
    }
    return out;
}

ReturnDistances return_distances(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, int period,
                                 int workers)
{
    if (period < 1) throw std::invalid_argument("period must be >= 1");
    std::vector<ReturnResult> results(samples.size());
    parallel_for(samples.size(), workers,
                 [&](std::size_t i) { results[i] = try_iterate(b, samples[i], period); });

    ReturnDistances rd;
    rd.distances.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ReturnResult& r = results[i];
        if (r.ok) {
            rd.distances.push_back(phase_distance(b, r.end, {b.wrap(samples[i].s), samples[i].phi}));
            rd.perimeters.push_back(r.perimeter);
            continue;
        }
        switch (r.failure) {
        case CollisionFailure::corner_hit: ++rd.corner_hits; break;
        case CollisionFailure::grazing_reflection: ++rd.grazing; break;
        default: ++rd.no_intersection; break;
        }
    }
    return rd;
}

FractionEstimate fraction_within(const ReturnDistances& rd, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    FractionEstimate f;
    f.eps = eps;
    f.n_effective = rd.distances.size();
    f.n_excluded = rd.excluded();
    for (double d : rd.distances)
        if (d < eps) ++f.hits;
    if (f.n_effective > 0) {
        f.fraction = static_cast<double>(f.hits) / static_cast<double>(f.n_effective);
        f.stderr_ = std::sqrt(f.fraction * (1.0 - f.fraction) / static_cast<double>(f.n_effective));
    }
    return f;
}

FractionEstimate periodic_fraction(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, double eps,
                                   int period, int workers)
{
    return fraction_within(return_distances(b, samples, period, workers), eps);
}

MeasureScan scaling_study(const BoundaryCurve& b, std::size_t n, double eps0, int halvings, std::uint64_t seed,
                          int period, int workers)
{
    if (halvings < 3) throw std::invalid_argument("scaling_study needs halvings >= 3");
    if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
    const ReturnDistances rd = return_distances(b, sample_mu(b, n, seed), period, workers);
    MeasureScan scan;
    scan.table = b.name();
    scan.n = n;
    scan.seed = seed;
    scan.period = period;
    scan.corner_hits = rd.corner_hits;
    scan.grazing = rd.grazing;
    scan.no_intersection = rd.no_intersection;
    for (int k = 0; k <= halvings; ++k) scan.rows.push_back(fraction_within(rd, std::ldexp(eps0, -k)));
    return scan;
}

std::vector<double> halving_ratios(const MeasureScan& scan, std::size_t min_hits)
{
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < scan.rows.size(); ++k) {
        const FractionEstimate& a = scan.rows[k];
        const FractionEstimate& c = scan.rows[k + 1];
        out.push_back(a.hits >= min_hits && c.hits >= min_hits ? a.fraction / c.fraction
                                                                : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

InvarianceReport invariance_test(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, int workers)
{
    std::vector<std::optional<PhasePoint>> images(samples.size());
    parallel_for(samples.size(), workers, [&](std::size_t i) {
        const ReturnResult r = try_iterate(b, samples[i], 1);
        if (r.ok) images[i] = r.end;
    });

    const double len = b.total_length();
    struct TestFn {
        const char* name;
        double (*f)(const PhasePoint&, double);
    };
    const TestFn fns[] = {
        {"cos(phi)", [](const PhasePoint& p, double) { return std::cos(p.phi); }},
        {"cos(2 phi)", [](const PhasePoint& p, double) { return std::cos(2.0 * p.phi); }},
        {"s/L", [](const PhasePoint& p, double l) { return p.s / l; }},
    };

    InvarianceReport rep;
    for (const auto& img : images) (img ? rep.n_used : rep.n_excluded)++;
    rep.pass = rep.n_used > 1;
    for (const TestFn& fn : fns) {
        // Welford accumulators for the before/after samples.
        double mb = 0, ma = 0, vb = 0, va = 0;
        std::size_t k = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (!images[i]) continue;
            ++k;
            const double xb = fn.f({b.wrap(samples[i].s), samples[i].phi}, len);
            const double xa = fn.f(*images[i], len);
            const double db = xb - mb, da = xa - ma;
            mb += db / k, ma += da / k;
            vb += db * (xb - mb), va += da * (xa - ma);
        }
        InvarianceCheck c;
        c.function = fn.name;
        c.mean_before = mb;
        c.mean_after = ma;
        if (k > 1) {
            const double n = static_cast<double>(k);
            c.combined_stderr = std::sqrt(vb / (n - 1) / n + va / (n - 1) / n);
        }
        c.pass = std::abs(ma - mb) < 3.0 * c.combined_stderr;
        rep.pass = rep.pass && c.pass;
        rep.checks.push_back(c);
    }
    return rep;
}

InvarianceReport invariance_test(const BoundaryCurve& b, std::size_t n, std::uint64_t seed, int workers)
{
    return invariance_test(b, sample_mu(b, n, seed), workers);
}

}  // namespace curvebill
