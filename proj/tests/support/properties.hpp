#pragma once

#include <cstdint>
#include <string>

// Randomized property suites shared by the gtest binaries and the
// acceptance runner. Each suite draws `instances` problems from a fixed
// seed and counts the ones violating the property.
namespace credal::testing {

struct PropertyOutcome {
  int instances = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && instances > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Rectangular sets are weakly time consistent; conservative ones are
/// also time consistent. Sets are built as hulls of random sets.
PropertyOutcome rectangular_time_consistency(std::uint64_t seed, int instances);

/// Convex rectangular sets: standard conditioning is calibrated and
/// sharply calibrated.
PropertyOutcome rectangular_standard_calibration(std::uint64_t seed, int instances);

/// Convex sets and random partitions: conditioning on a class lands inside
/// the partition-conditioning image at every member.
PropertyOutcome forward_inclusion(std::uint64_t seed, int instances);

/// Conditioning a mixture of joints lands in the convex conditional set.
PropertyOutcome mixture_conditioning(std::uint64_t seed, int instances);
/// Disjoint cells with equal convex posteriors: the union's posterior lies
/// inside each cell's.
PropertyOutcome union_of_equal_posteriors(std::uint64_t seed, int instances);
/// Rectangular sets: points common to every per-x posterior over U lie in
/// the posterior given U.
PropertyOutcome intersection_within_union_posterior(std::uint64_t seed, int instances);

/// Rectangular sets: the worst-case loss of a rule equals the worst case of
/// the X-marginal average of its per-x posterior worst cases.
PropertyOutcome decomposition_identity(std::uint64_t seed, int instances);

/// hull(hull(p)) = hull(p), and the a priori value and optimal face do not
/// change under convex closure.
PropertyOutcome hull_and_closure_invariance(std::uint64_t seed, int instances);

/// The LP value lies within brute-force bounds at grids 1..8 on random
/// 2x2x2 problems.
PropertyOutcome oracle_sandwich(std::uint64_t seed, int instances);

/// Every a priori solution passes verify_saddle, and every per-x posterior
/// equilibrium passes it on the conditioned problem.
PropertyOutcome solver_saddle(std::uint64_t seed, int instances);

}  // namespace credal::testing
