#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/roots.hpp"

namespace indefsqrt {

// Ordered so that a larger value is a stronger guarantee.
enum class StabilityLevel { Unstable = 0, Conditional = 1, Unconditional = 2 };

std::string_view to_string(StabilityLevel level) noexcept;

struct StabilityVerdict {
  StabilityLevel level = StabilityLevel::Unstable;
  std::string reason;
};

/// Stability of the particular H-nonnegative root described by `plan`.
/// Throws ModeViolation unless plan.mode is Hnn, NoHnnRoot if cp has none.
StabilityVerdict classify_root(const RootPlan& plan, const CanonicalPair& cp);

/// Best level reachable by any H-nonnegative root of cp. Throws NoHnnRoot.
StabilityVerdict best_stability(const CanonicalPair& cp);

enum class WitnessKind { DeltaMinus, MixedPair };

std::string_view to_string(WitnessKind kind) noexcept;
WitnessKind parse_witness_kind(std::string_view text);

/// B(a) = [-a] with H = [-1], or B(a) = diag(a, -a) with H = diag(1, -1).
/// Both are H-nonnegative for all a in [0, 1] and lose every H-nonnegative
/// square root as soon as a > 0.
MatrixPair instability_witness(WitnessKind kind, double a);

struct ProbeSample {
  std::size_t index = 0;
  double perturbation = 0.0;  // ||B - B~||
  bool rootable = false;
  double distance = 0.0;      // to the nearest constructible root, if rootable
};

struct ProbeFailure {
  std::size_t index = 0;
  double perturbation = 0.0;
  std::string reason;
};

struct ProbeReport {
  std::size_t samples = 0;
  std::size_t root_exists_count = 0;
  double max_nearest_root_distance = 0.0;
  double max_distance_ratio = 0.0;  // max distance / ||B - B~|| over rootable samples
  double radius = 0.0;
  std::vector<ProbeSample> records;
  std::vector<ProbeFailure> failures;
};

/// Draws H-nonnegative perturbations of synthesize(cp).B with H held fixed
/// and measures how far the root of `plan` is from the nearest root that the
/// templates can build for each perturbed matrix. The distance is a grid plus
/// compass-search surrogate for the infimum, not a certified bound.
ProbeReport perturbation_probe(const CanonicalPair& cp, const RootPlan& plan, double radius, std::size_t samples,
                               std::uint64_t seed, const Tolerance& tol = {});

}  // namespace indefsqrt
