// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/error.hpp"
#include "indefsqrt/roots.hpp"
#include "indefsqrt/stability.hpp"
#include "indefsqrt/verify.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace indefsqrt;
using testing::cp;
using testing::mat;
using testing::zero_cp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_ms, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (ms > limit_ms) r.require(false, "time limit exceeded");
  std::printf("[%s] %d. %s (%.1f ms, limit %.0f ms)%s%s\n", r.ok ? "PASS" : "FAIL", id, name, ms, limit_ms,
              r.detail.empty() ? "" : ": ", r.detail.c_str());
  if (!r.ok) ++failures;
}

std::vector<int> sizes_of(const std::vector<PredictedBlock>& blocks) {
  std::vector<int> out;
  for (const auto& b : blocks) out.push_back(b.size);
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<SegrePairing> admissible(const CanonicalPair& p, Mode mode) {
  const auto z = tri_split(p).zero;
  std::vector<SegrePairing> out;
  for (const auto& pr : enumerate_pairings(segre_characteristic(z)))
    if (admissible_for_mode(pr, z, mode).ok) out.push_back(pr);
  return out;
}

}  // namespace

int main() {
  criterion(1, "pairings and Jordan forms for Segre characteristic (2,2,1,1)", 1.0, [] {
    Outcome o;
    const auto z = zero_cp(1, 1, 2);
    const auto ps = enumerate_pairings(segre_characteristic(z));
    o.require(ps.size() == 3, "expected three pairings");
    if (ps.size() != 3) return o;
    o.require(ps[0].pairs() == std::vector<SegrePair>{{2, 2}, {1, 1}}, "first pairing");
    o.require(ps[1].pairs() == std::vector<SegrePair>{{2, 2}, {1, 0}, {1, 0}}, "second pairing");
    o.require(ps[2].pairs() == std::vector<SegrePair>{{2, 1}, {2, 1}}, "third pairing");
    o.require(sizes_of(predicted_jordan_form(ps[0], z, {}, Mode::General)) == std::vector<int>{4, 2}, "J4+J2");
    o.require(sizes_of(predicted_jordan_form(ps[1], z, {}, Mode::General)) == std::vector<int>{4, 1, 1}, "J4+J1+J1");
    o.require(sizes_of(predicted_jordan_form(ps[2], z, {}, Mode::General)) == std::vector<int>{3, 3}, "J3+J3");
    return o;
  });

  criterion(2, "five listed square roots of diag(-3,-3)", 1.0, [] {
    Outcome o;
    const Complex i{0, 1};
    const double r3 = std::sqrt(3.0);
    const ComplexMatrix B = mat({{-3, 0}, {0, -3}});
    const std::vector<ComplexMatrix> roots{
        mat({{i * r3, 0}, {0, i * r3}}), mat({{-i * r3, 0}, {0, -i * r3}}), mat({{i * r3, 0}, {0, -i * r3}}),
        mat({{2.0 * i, 1}, {1, -2.0 * i}}), mat({{2, -7}, {1, -2}})};
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const auto c = check_square(roots[k], B);
      o.require(c.ok && c.residual <= 1e-12, "root " + std::to_string(k + 1));
    }
    return o;
  });

  criterion(3, "template soundness, 1000 draws per template", 5000.0, [] {
    Outcome o;
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (auto kind : {ParamKind::P11, ParamKind::P11Upper, ParamKind::P21, ParamKind::P22, ParamKind::P22Alt,
                      ParamKind::P11Hsa, ParamKind::P21Hsa}) {
      const auto pair = pair_of(kind);
      const ComplexMatrix target = target_block(pair);
      for (int k = 0; k < 1000; ++k) {
        const auto p = sample_params(kind, rng);
        const ComplexMatrix a = root_block(pair, p);
        const double n = param_norm(p);
        const double res = spectral_norm(a * a - target) / (1 + n * n);
        worst = std::max(worst, res);
        o.require(res <= 1e-10, std::string(to_string(kind)) + " square residual");
        if (kind == ParamKind::P11Hsa || kind == ParamKind::P21Hsa) {
          const ComplexMatrix ha = local_gramian(pair) * a;
          o.require(spectral_norm(ha - ha.adjoint()) <= 1e-12, std::string(to_string(kind)) + " selfadjointness");
        }
      }
    }
    std::ostringstream d;
    d << "worst scaled residual " << worst;
    if (o.ok) o.detail = d.str();
    return o;
  });

  criterion(4, "Jordan form one-to-one, zero-block pairs of dim <= 10, 50 seeds", 60000.0, [] {
    Outcome o;
    std::size_t cases = 0;
    for (const auto& z : testing::all_zero_cps(10)) {
      for (const auto& pr : enumerate_pairings(segre_characteristic(z))) {
        const JordanData predicted = to_jordan_data(predicted_jordan_form(pr, z, {}, Mode::General));
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
          const ComplexMatrix a = assemble_root(z, sample_plan(z, pr, Mode::General, seed));
          const bool same = same_jordan(jordan_structure(a), predicted, 1e-6);
          ++cases;
          o.require(same, "mismatch at dim " + std::to_string(z.dimension()) + " seed " + std::to_string(seed));
        }
      }
    }
    if (o.ok) o.detail = std::to_string(cases) + " roots";
    return o;
  });

  criterion(5, "closed-form criteria agree with exhaustive search", 30000.0, [] {
    Outcome o;
    for (std::size_t twos = 0; twos <= 12; ++twos)
      for (std::size_t ones = 0; ones + twos <= 12; ++ones) {
        SegreCharacteristic sc;
        sc.entries.assign(twos, 2);
        sc.entries.insert(sc.entries.end(), ones, 1);
        o.require(has_square_root(sc) == brute_force_pairing_exists(sc),
                  "(#1,#2)=(" + std::to_string(ones) + "," + std::to_string(twos) + ")");
      }
    std::size_t configs = 0;
    for (int pos = 0; pos <= 8; ++pos)
      for (int neg = 0; neg + pos <= 8; ++neg) {
        std::vector<CanonicalPair> zeros = testing::all_zero_cps(8 - pos - neg);
        zeros.push_back(CanonicalPair{});
        for (const auto& z : zeros) {
          std::vector<CanonicalBlock> blocks = z.blocks();
          for (int k = 0; k < pos; ++k) blocks.push_back({1.0 + k, 1, 1});
          for (int k = 0; k < neg; ++k) blocks.push_back({-1.0 - k, 1, -1});
          if (blocks.empty()) continue;
          const CanonicalPair full(blocks);
          ++configs;
          std::vector<oracle::Block> labelled;
          for (const auto& b : full.blocks()) labelled.push_back({b.eigenvalue, b.size, b.sign});
          const bool nonneg = neg == 0;
          const bool hsa = existence(full, Mode::Hsa).ok;
          const bool hnn = existence(full, Mode::Hnn).ok;
          o.require(existence(full, Mode::General).ok == !admissible(full, Mode::General).empty(), "general");
          o.require(hsa == (nonneg && !admissible(full, Mode::Hsa).empty()), "hsa vs pairings");
          o.require(hnn == (nonneg && !admissible(full, Mode::Hnn).empty()), "hnn vs pairings");
          o.require(hsa == oracle::selfadjoint_root_exists(labelled), "hsa vs block matching");
          o.require(hnn == oracle::selfadjoint_root_exists(labelled, true), "hnn vs block matching");
        }
      }
    if (o.ok) o.detail = std::to_string(configs) + " configurations";
    return o;
  });

  criterion(6, "canonicalization round trip, 500 pairs, dim <= 12, cond <= 100", 60000.0, [] {
    Outcome o;
    std::mt19937_64 rng(6);
    for (int k = 0; k < 500; ++k) {
      const auto p = testing::random_cp(rng, 12);
      const auto s = scramble(p, rng(), 100.0);
      const auto f = canonicalize(s.B, s.H);
      o.require(same_structure(f.pair, p, 1e-6), "pair " + std::to_string(k));
    }
    return o;
  });

  criterion(7, "stability catalog and witness families", 1000.0, [] {
    Outcome o;
    const auto plus = zero_cp(1, 0, 0);
    const auto minus = zero_cp(0, 1, 0);
    const auto mixed = zero_cp(1, 1, 0);
    o.require(best_stability(plus).level == StabilityLevel::Unconditional, "([0],[1])");
    o.require(classify_root(sample_plan(plus, {1, 0, 0, 0}, Mode::Hnn, 0), plus).level ==
                  StabilityLevel::Unconditional,
              "([0],[1]) root");
    o.require(best_stability(minus).level == StabilityLevel::Conditional, "([0],[-1])");
    o.require(classify_root(sample_plan(minus, {1, 0, 0, 0}, Mode::Hnn, 0), minus).level ==
                  StabilityLevel::Conditional,
              "([0],[-1]) root");
    o.require(best_stability(mixed).level == StabilityLevel::Conditional, "(0_2, diag(1,-1)) best");
    o.require(classify_root(sample_plan(mixed, {0, 1, 0, 0}, Mode::Hnn, 0), mixed).level == StabilityLevel::Unstable,
              "(1,1) pairing root");
    for (auto kind : {WitnessKind::DeltaMinus, WitnessKind::MixedPair}) {
      const auto w0 = instability_witness(kind, 0.0);
      o.require(existence(canonicalize(w0.B, w0.H).pair, Mode::Hnn).ok, "witness rootable at a=0");
      for (int k = 1; k <= 10; ++k) {
        const auto w = instability_witness(kind, k / 10.0);
        o.require(is_H_nonnegative(w.B, w.H), "witness H-nonnegative");
        o.require(!existence(canonicalize(w.B, w.H).pair, Mode::Hnn).ok,
                  std::string(to_string(kind)) + " a=" + std::to_string(k / 10.0));
      }
    }
    return o;
  });

  criterion(8, "Lipschitz probe for diag(1,4,9), H=I, radius 1e-3, 100 samples", 30000.0, [] {
    Outcome o;
    const auto p = cp({{1, 1, 1}, {4, 1, 1}, {9, 1, 1}});
    const auto plan = sample_plan(p, SegrePairing{}, Mode::Hnn, 0);
    const auto r = perturbation_probe(p, plan, 1e-3, 100, 8);
    o.require(r.samples == 100, "sample count");
    o.require(r.root_exists_count == 100, "every sample rootable");
    o.require(r.max_distance_ratio <= 1.0, "distance ratio above 1.0");
    std::ostringstream d;
    d << "max ratio " << r.max_distance_ratio << ", max distance " << r.max_nearest_root_distance;
    if (o.ok) o.detail = d.str();
    return o;
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
