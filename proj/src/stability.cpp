#include "indefsqrt/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

constexpr int kAlphaGridPoints = 5;
constexpr double kAlphaGridMax = 2.0;
constexpr int kPhaseGridPoints = 8;
constexpr int kDescentSteps = 50;

void require_hnn_root(const CanonicalPair& cp) {
  const Verdict v = existence(cp, Mode::Hnn);
  if (!v.ok) throw Error(ErrorCode::NoHnnRoot, v.reason);
}

ComplexMatrix random_hermitian_direction(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix e(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) e(i, j) = Complex(normal(rng), normal(rng));
  e = 0.5 * (e + e.adjoint());
  return e / spectral_norm(e);
}

ComplexMatrix clip_to_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (m + m.adjoint()));
  const RealVector clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().adjoint();
}

// Nearest root of B~ = S Bc S^{-1} among S Ac S^{-1}, with Ac built from the
// H-nonnegative templates of each admissible pairing of Bc.
class NearestRootSearch {
 public:
  NearestRootSearch(const ComplexMatrix& target, const CanonicalForm& form)
      : target_(target), form_(form), lu_(form.S) {}

  double run() {
    double best = std::numeric_limits<double>::infinity();
    const auto zero = tri_split(form_.pair).zero;
    const RootSignChoice signs{std::vector<int>(form_.pair.r(), 1)};
    for (const SegrePairing& pairing : enumerate_pairings(segre_characteristic(zero))) {
      if (!admissible_for_mode(pairing, zero, Mode::Hnn).ok) continue;
      best = std::min(best, search_pairing(pairing, signs));
    }
    return best;
  }

 private:
  // Free coordinates: (alpha, phase) per (1,1) pair.
  double distance(const SegrePairing& pairing, const RootSignChoice& signs, const std::vector<double>& x) const {
    std::vector<RootParams> params;
    std::size_t k = 0;
    for (const SegrePair& p : pairing.pairs()) {
      if (p == SegrePair{1, 1}) {
        const double alpha = std::max(x[2 * k], 1e-9);
        params.push_back(P11Hsa{alpha, std::polar(alpha, x[2 * k + 1])});
        ++k;
      } else {
        params.push_back(P10{});
      }
    }
    const RootPlan plan = make_plan(form_.pair, pairing, Mode::Hnn, std::move(params), signs);
    const ComplexMatrix root = form_.S * assemble_root(form_.pair, plan) * lu_.inverse();
    return spectral_norm(root - target_);
  }

  double search_pairing(const SegrePairing& pairing, const RootSignChoice& signs) const {
    const std::size_t dims = 2 * pairing.l2;
    std::vector<double> x(dims);
    for (std::size_t k = 0; k < pairing.l2; ++k) x[2 * k] = 1.0;
    double best = distance(pairing, signs, x);
    if (dims == 0) return best;

    // Coordinate-wise grid, one (1,1) pair at a time.
    for (std::size_t k = 0; k < pairing.l2; ++k) {
      for (int ia = 1; ia <= kAlphaGridPoints; ++ia) {
        for (int ip = 0; ip < kPhaseGridPoints; ++ip) {
          std::vector<double> trial = x;
          trial[2 * k] = kAlphaGridMax * ia / kAlphaGridPoints;
          trial[2 * k + 1] = 2.0 * std::numbers::pi * ip / kPhaseGridPoints;
          const double d = distance(pairing, signs, trial);
          if (d < best) {
            best = d;
            x = trial;
          }
        }
      }
    }
    // Compass descent.
    std::vector<double> step(dims);
    for (std::size_t k = 0; k < pairing.l2; ++k) {
      step[2 * k] = kAlphaGridMax / kAlphaGridPoints;
      step[2 * k + 1] = std::numbers::pi / kPhaseGridPoints;
    }
    for (int it = 0; it < kDescentSteps; ++it) {
      bool improved = false;
      for (std::size_t c = 0; c < dims; ++c) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = x;
          trial[c] += dir * step[c];
          if (c % 2 == 0 && trial[c] <= 0.0) continue;
          const double d = distance(pairing, signs, trial);
          if (d < best) {
            best = d;
            x = trial;
            improved = true;
          }
        }
      }
      if (!improved)
        for (double& s : step) s *= 0.5;
    }
    return best;
  }

  const ComplexMatrix& target_;
  const CanonicalForm& form_;
  Eigen::PartialPivLU<ComplexMatrix> lu_;
};

}  // namespace

std::string_view to_string(StabilityLevel level) noexcept {
  switch (level) {
    case StabilityLevel::Unstable: return "Unstable";
    case StabilityLevel::Conditional: return "Conditional";
    case StabilityLevel::Unconditional: return "Unconditional";
  }
  return "Unstable";
}

StabilityVerdict classify_root(const RootPlan& plan, const CanonicalPair& cp) {
  if (plan.mode != Mode::Hnn) throw Error(ErrorCode::ModeViolation, "stability is defined for H-nonnegative roots");
  require_hnn_root(cp);
  if (plan.pairing.l2 > 0) {
    return {StabilityLevel::Unstable,
            "l2 > 0: a (1,1) pair's J2(0) root is not the limit of roots of nearby rootable matrices"};
  }
  const auto assignment =
      plan.block_assignment.empty() ? assign_blocks(cp, plan.pairing, plan.mode) : plan.block_assignment;
  const auto pairs = plan.pairing.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (pairs[k] == SegrePair{1, 0} && cp.blocks()[assignment[k][0]].sign < 0) {
      return {StabilityLevel::Conditional,
              "l2 = 0 but a (1,0) zero block has sign -1: perturbations can leave the rootable set"};
    }
  }
  return {StabilityLevel::Unconditional, "l2 = 0 and every (1,0) zero block has sign +1"};
}

StabilityVerdict best_stability(const CanonicalPair& cp) {
  require_hnn_root(cp);
  if (cp.s_minus() == 0) return {StabilityLevel::Unconditional, "s- = 0: the all-(1,0) pairing is unconditionally stable"};
  return {StabilityLevel::Conditional, "s- > 0: the all-(1,0) pairing is conditionally stable, none is unconditional"};
}

std::string_view to_string(WitnessKind kind) noexcept {
  return kind == WitnessKind::DeltaMinus ? "delta_minus" : "mixed_pair";
}

WitnessKind parse_witness_kind(std::string_view text) {
  if (text == "delta_minus") return WitnessKind::DeltaMinus;
  if (text == "mixed_pair") return WitnessKind::MixedPair;
  throw Error(ErrorCode::InvalidArgument, "unknown witness kind '" + std::string(text) + "'");
}

MatrixPair instability_witness(WitnessKind kind, double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "witness parameter must lie in [0, 1]");
  if (kind == WitnessKind::DeltaMinus) {
    return {ComplexMatrix::Constant(1, 1, -a), ComplexMatrix::Constant(1, 1, -1.0)};
  }
  ComplexMatrix B = ComplexMatrix::Zero(2, 2);
  B(0, 0) = a;
  B(1, 1) = -a;
  ComplexMatrix H = ComplexMatrix::Identity(2, 2);
  H(1, 1) = -1.0;
  return {B, H};
}

ProbeReport perturbation_probe(const CanonicalPair& cp, const RootPlan& plan, double radius, std::size_t samples,
                               std::uint64_t seed, const Tolerance& tol) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "probe radius must be positive");
  ProbeReport report;
  report.samples = samples;
  report.radius = radius;
  if (samples == 0) return report;

  const MatrixPair base = synthesize(cp);
  const ComplexMatrix root = assemble_root(cp, plan);
  const ComplexMatrix P = base.H * base.B;
  const Eigen::Index n = P.rows();
  const double scale = radius * spectral_norm(base.H);
  Eigen::PartialPivLU<ComplexMatrix> h_lu(base.H);

  // Fix the whole sample set before evaluating anything.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ComplexMatrix> perturbed;
  perturbed.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    // Clipping to the PSD cone moves P + E by at most ||E||, so the total
    // distance to P stays below 2 ||E|| <= radius ||H||.
    const ComplexMatrix E = (0.5 * scale * (1.0 - unit(rng))) * random_hermitian_direction(n, rng);
    perturbed.push_back(h_lu.solve(clip_to_psd(P + E)));
  }

  for (std::size_t i = 0; i < samples; ++i) {
    const ComplexMatrix& Bt = perturbed[i];
    ProbeSample rec{i, spectral_norm(base.B - Bt), false, 0.0};
    try {
      const CanonicalForm form = canonicalize(Bt, base.H, tol);
      const Verdict v = existence(form.pair, Mode::Hnn);
      if (!v.ok) {
        report.failures.push_back({i, rec.perturbation, v.reason});
      } else {
        rec.rootable = true;
        rec.distance = NearestRootSearch(root, form).run();
        ++report.root_exists_count;
        report.max_nearest_root_distance = std::max(report.max_nearest_root_distance, rec.distance);
        if (rec.perturbation > 0.0) {
          report.max_distance_ratio = std::max(report.max_distance_ratio, rec.distance / rec.perturbation);
        }
      }
    } catch (const Error& e) {
      report.failures.push_back({i, rec.perturbation, e.what()});
    }
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace indefsqrt
