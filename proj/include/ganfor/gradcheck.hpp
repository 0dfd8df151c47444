#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ganfor {

// Central finite differences (default step 1e-5) against analytic
// gradients, in double precision. Reported error per slot is
// |a-n| / max(|a|, |n|, 1e-8); the result is the worst slot.
struct GradCheckResult {
  std::string name;
  double max_rel_err = 0.0;
  size_t slots = 0;
  // Slots whose stencil drives some leaky-relu input across zero. Central
  // differences are invalid across the kink, so those slots are not scored.
  size_t slots_skipped = 0;
};

double finite_difference_max_err(const std::function<double()>& eval, double* x,
                                 const double* analytic, size_t count,
                                 double step = 1e-5);

GradCheckResult gradcheck_conv(uint64_t seed);
GradCheckResult gradcheck_batchnorm(uint64_t seed);
GradCheckResult gradcheck_leaky_relu(uint64_t seed);
GradCheckResult gradcheck_bce(uint64_t seed);
// Full reduced network (32x32 input, widths 4,8,8,8) through the loss.
GradCheckResult gradcheck_network(uint64_t seed);

// The standard suite in a fixed order: conv, batchnorm, leaky_relu, bce,
// network. Layer tolerance is 1e-4; the end-to-end network gets 1e-3.
std::vector<GradCheckResult> gradcheck_suite(uint64_t seed);
double gradcheck_tolerance(const std::string& name);

}  // namespace ganfor
