#pragma once

// Monte Carlo estimates against the invariant measure sin(phi) dphi ds.

#include <cstdint>
#include <string>
#include <vector>

#include "curvebill/billiard.hpp"

namespace curvebill {

/// s uniform on [0, L), phi with density sin(phi)/2 via phi = arccos(1 - 2u).
/// Sample i depends only on (seed, i).
std::vector<PhasePoint> sample_mu(const BoundaryCurve& b, std::size_t n, std::uint64_t seed);

/// s uniform, phi uniform on (0, pi). Not invariant in general; used to
/// check that invariance_test can fail.
std::vector<PhasePoint> sample_uniform_angle(const BoundaryCurve& b, std::size_t n, std::uint64_t seed);

/// Phase distance between x and T^period(x) for each sample, with failed
/// orbits tallied by cause instead.
struct ReturnDistances {
    std::vector<double> distances;  // one per non-excluded sample, in sample order
    std::vector<double> perimeters; // total path length of the same orbits
    std::size_t corner_hits = 0;
    std::size_t grazing = 0;
    std::size_t no_intersection = 0;

    std::size_t excluded() const { return corner_hits + grazing + no_intersection; }
};

ReturnDistances return_distances(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, int period,
                                 int workers = 1);

struct FractionEstimate {
    double eps = 0.0;
    std::size_t hits = 0;
    std::size_t n_effective = 0;  // samples not excluded
    std::size_t n_excluded = 0;
    double fraction = 0.0;
    double stderr_ = 0.0;  // sqrt(f (1 - f) / n_effective)
};

FractionEstimate fraction_within(const ReturnDistances& rd, double eps);

FractionEstimate periodic_fraction(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, double eps,
                                   int period = 3, int workers = 1);

struct MeasureScan {
    std::string table;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    int period = 3;
    std::vector<FractionEstimate> rows;  // eps0 * 2^-k, k = 0..halvings
    std::size_t corner_hits = 0;
    std::size_t grazing = 0;
    std::size_t no_intersection = 0;
};

/// Fractions at eps0 * 2^-k, k = 0..halvings, on one common sample set.
/// Requires halvings >= 3.
MeasureScan scaling_study(const BoundaryCurve& b, std::size_t n, double eps0, int halvings, std::uint64_t seed,
                          int period = 3, int workers = 1);

/// fraction(eps_k) / fraction(eps_{k+1}) for consecutive rows where both hit
/// counts reach `min_hits`; other entries are NaN.
std::vector<double> halving_ratios(const MeasureScan& scan, std::size_t min_hits = 100);

struct InvarianceCheck {
    std::string function;
    double mean_before = 0.0;
    double mean_after = 0.0;
    double combined_stderr = 0.0;  // sqrt(se_before^2 + se_after^2)
    bool pass = false;
};

struct InvarianceReport {
    std::vector<InvarianceCheck> checks;  // cos(phi), cos(2 phi), s / L
    std::size_t n_used = 0;
    std::size_t n_excluded = 0;
    bool pass = false;
};

/// Compares sample means of the test functions before and after one
/// application of T. Passes when every difference is below 3 combined
/// standard errors.
InvarianceReport invariance_test(const BoundaryCurve& b, const std::vector<PhasePoint>& samples, int workers = 1);
InvarianceReport invariance_test(const BoundaryCurve& b, std::size_t n, std::uint64_t seed, int workers = 1);

}  // namespace curvebill
