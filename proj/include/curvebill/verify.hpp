#pragma once

// Built-in self-checks run by `curvebill verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "curvebill/jacobi.hpp"

namespace curvebill {

struct VerifyOptions {
    JacobiOptions jacobi;
    std::uint64_t seed = 0;
    std::size_t draws = 1000;             // random draws for the algebraic checks
    std::size_t invariance_n = 10000;     // mu-samples per invariance table
    int multistarts = 6;
    int workers = 1;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> check_group_law(const VerifyOptions& opt);
std::vector<CheckResult> check_top_right_identity(const VerifyOptions& opt);
/// trace(DT^3) from Jacobi matrices against finite differences at the
/// 3-periodic orbits of a few rotationally symmetric and perturbed tables.
std::vector<CheckResult> check_trace_conjugacy(const VerifyOptions& opt);
std::vector<CheckResult> check_law_of_cosines(const VerifyOptions& opt);
/// Circles in all geometries must pass; the uniform-angle sampler on a
/// stretched ellipse must fail.
std::vector<CheckResult> check_mu_invariance(const VerifyOptions& opt);

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

}  // namespace curvebill
