#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catint/targets.hpp"

namespace catint {

struct SuiteResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
    std::vector<std::string> messages; // first few failures, for diagnosis
};

std::vector<std::string> suite_names(); // excludes the "all" alias

/// Runs one named invariant suite ("scalars", "algebra", "measure", "stepfn",
/// "engine", "targets") or "all", with the given case count and seed.
std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t cases,
                                    std::uint64_t seed);

/// Random level-u step function with rational coefficients.
StepFunction random_step_function(std::mt19937_64& rng, unsigned n, unsigned level, Backend b,
                                  std::int64_t max_num = 64, std::int64_t max_den = 16);

/// Standard boxes used across the suites.
BoxMeasure unit_box(unsigned n, Backend b);                    // Lebesgue, xi = 1/2
BoxMeasure unit_box_power(unsigned n, Backend b, int q = 2);   // F(x) = x^q
BoxMeasure unit_box_xi(unsigned n, Backend b, const Scalar& xi); // Lebesgue, custom xi

} // namespace catint
