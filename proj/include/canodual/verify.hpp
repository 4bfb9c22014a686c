#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canodual/primal.hpp"

namespace canodual {

/// sqrt(2)/2 to 16 digits; the width shared by all reference instances.
inline constexpr double kReferenceAlpha = 0.7071067811865476;

/// The reference parameter sets exercised by the case table and the
/// verification suite (all with y = 1, w = 2, alpha = sqrt(2)/2).
ProblemParams instance_case1();             // x = 1, beta = 0.1
ProblemParams instance_case2();             // x = 4, beta = 0.1
ProblemParams instance_case3();             // x = 4, beta = 0.22
ProblemParams instance_case4();             // x = 8, beta = 0.25
ProblemParams instance_boundary_variant();  // x = 4, beta = 0.12
ProblemParams instance_case5();             // x = 1, beta = 5

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Test hooks for the verification commands.
enum class FaultInjection { None, FlipLoad };

/// Deterministic check battery over the reference instances: duality-gap
/// audit, derivative consistency, conjugate round trips, the cross-region
/// ordering and the S+ structure assertions.
std::vector<CheckResult> run_core_checks(FaultInjection fault = FaultInjection::None);

struct SweepOutcome {
  int instances = 0;
  int gap_checked = 0;
  int gap_violations = 0;
  double worst_gap = 0.0;
  int relation_checked = 0;
  int relation_violations = 0;
  double worst_relation = 0.0;
  int threshold_checked = 0;
  int threshold_disagreements = 0;
  int structure_checked = 0;
  int structure_failures = 0;
  int ordering_checked = 0;      // instances where the ordering precondition held
  int ordering_failures = 0;
  std::vector<std::string> first_failures;  // up to a handful, for diagnostics
};

/// Randomized parameter sweep: y in (0.2, 1.5), w in (1.2, 3), x in (0, 10),
/// beta in (0.01, 0.5), alpha in (0.4, 1.2), sampled deterministically from
/// the seed. Per instance: zero-gap and second-derivative relation at every
/// matched pair, the sigma_f threshold agreement (margin band excluded), the
/// S+ structure assertions, and the cross-region ordering.
SweepOutcome run_sweep(std::uint64_t seed, int instances);

}  // namespace canodual
