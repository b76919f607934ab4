#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>
#include <vector>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/pairing.hpp"
#include "indefsqrt/verify.hpp"

namespace indefsqrt {

// Free parameters of the square-root templates, one struct per template.
// The square root of J_1(0) has no parameters.
struct P10 {};
/// [[a, -a^2/b], [b, -a]], b != 0.
struct P11 {
  Complex alpha;
  Complex beta;
};
/// [[0, a], [0, 0]], a != 0 (the zero matrix is left to two (1,0) pairs).
struct P11Upper {
  Complex alpha;
};
/// [[0, a, b], [0, 0, 0], [0, 1/b, 0]], b != 0.
struct P21 {
  Complex alpha;
  Complex beta;
};
/// Four-parameter root of J_2(0) + J_2(0); the (0,3) entry is derived.
struct P22 {
  Complex a1;
  Complex a2;
  Complex a3;
  Complex a4;
};
/// [[0, g1, g2, g3], [0, 0, 0, g2], [0, 1/g2, 0, -g1], [0, 0, 0, 0]], g1, g2 != 0.
struct P22Alt {
  Complex g1;
  Complex g2;
  Complex g3;
};
/// H-selfadjoint (1,1) root [[a, -conj(b)], [b, -a]] with a real, |b| = |a|, a != 0.
struct P11Hsa {
  double alpha = 1.0;
  Complex beta{1.0, 0.0};
};
/// H-selfadjoint (2,1) root: P21 with a real and |b| = 1.
struct P21Hsa {
  double alpha = 0.0;
  Complex beta{1.0, 0.0};
};

using RootParams = std::variant<P10, P11, P11Upper, P21, P22, P22Alt, P11Hsa, P21Hsa>;

enum class ParamKind { P10, P11, P11Upper, P21, P22, P22Alt, P11Hsa, P21Hsa };

ParamKind kind_of(const RootParams& params) noexcept;
std::string_view to_string(ParamKind kind) noexcept;
SegrePair pair_of(ParamKind kind) noexcept;

/// Throws ConstraintViolation when a nonzero or modulus constraint fails.
void validate(const RootParams& params);

/// Euclidean norm of the free parameters.
double param_norm(const RootParams& params);

/// The block whose square root a template produces: the zero matrix for
/// (1,0) and (1,1), J_2(0)+J_1(0) for (2,1), J_2(0)+J_2(0) for (2,2).
ComplexMatrix target_block(SegrePair pair);

/// Gramian the structured templates are selfadjoint for: diag(1,-1) for
/// (1,1), Q_2 + Q_1 for (2,1), [1] for (1,0).
ComplexMatrix local_gramian(SegrePair pair);

ComplexMatrix root_block(SegrePair pair, const RootParams& params);

/// Structured variant for Mode::Hsa / Mode::Hnn. Throws ModeViolation for
/// (2,2) pairs, for (2,1) under Hnn, for non-structured parameter kinds and
/// for an Hnn (1,1) root with alpha < 0 (that root is H-nonpositive).
ComplexMatrix root_block_structured(SegrePair pair, const RootParams& params, Mode mode);

/// Magnitudes log-uniform in [0.1, 10], phases uniform; real parameters get a
/// random sign except in Hnn mode where alpha > 0.
RootParams sample_params(ParamKind kind, std::mt19937_64& rng, Mode mode = Mode::General);
RootParams sample_params(SegrePair pair, Mode mode, std::mt19937_64& rng);
RootParams sample_params(SegrePair pair, Mode mode, std::uint64_t seed);

struct RootSignChoice {
  std::vector<int> deltas;  // one per nonzero-eigenvalue block, in cp order
};

struct RootPlan {
  SegrePairing pairing;
  Mode mode = Mode::General;
  std::vector<RootParams> params;  // aligned with pairing.pairs()
  RootSignChoice signs;
  /// Indices into cp.blocks() for each pair. (2,2): two doubles; (2,1):
  /// double then single; (1,1): +1 single then -1 single in structured modes.
  std::vector<std::vector<std::size_t>> block_assignment;
};

/// Greedy assignment of zero blocks to pairs, in canonical order.
std::vector<std::vector<std::size_t>> assign_blocks(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode);

/// Validates and fills in block_assignment.
RootPlan make_plan(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode, std::vector<RootParams> params,
                   RootSignChoice signs);

/// Plan with sampled parameters. Signs are random in General/Hsa and +1 in Hnn.
RootPlan sample_plan(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode, std::uint64_t seed);

/// Square root of synthesize(cp).B following the plan. Throws
/// ExistenceViolation when the mode has no root for cp.
ComplexMatrix assemble_root(const CanonicalPair& cp, const RootPlan& plan);

struct PredictedBlock {
  Complex eigenvalue;
  int size = 1;
  int sign = 0;  // 0 where no sign is predicted
};

std::vector<PredictedBlock> predicted_jordan_form(const SegrePairing& pairing, const CanonicalPair& cp,
                                                  const RootSignChoice& signs, Mode mode);

JordanData to_jordan_data(const std::vector<PredictedBlock>& blocks);

Verdict existence(const CanonicalPair& cp, Mode mode);

}  // namespace indefsqrt
