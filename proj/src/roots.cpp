#include "indefsqrt/roots.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kModulusTol = 1e-12;

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorCode::ConstraintViolation, what); }

bool is_structured(ParamKind k) { return k == ParamKind::P10 || k == ParamKind::P11Hsa || k == ParamKind::P21Hsa; }

double log_uniform_magnitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-1.0, 1.0);
  return std::pow(10.0, exponent(rng));
}

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return std::polar(log_uniform_magnitude(rng), phase(rng));
}

Complex unit_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, phase(rng));
}

double random_real(std::mt19937_64& rng, bool positive) {
  const double m = log_uniform_magnitude(rng);
  if (positive) return m;
  std::bernoulli_distribution coin(0.5);
  return coin(rng) ? m : -m;
}

void embed(ComplexMatrix& target, const ComplexMatrix& block, const std::vector<Eigen::Index>& index) {
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j)
      target(index[i], index[j]) = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

// Basis of the template: chain head then tail for a J_2(0), one index for a single.
std::vector<Eigen::Index> template_indices(const CanonicalPair& cp, const std::vector<std::size_t>& blocks) {
  const auto offs = cp.offsets();
  std::vector<Eigen::Index> out;
  for (std::size_t b : blocks) {
    out.push_back(offs[b]);
    if (cp.blocks()[b].size == 2) out.push_back(offs[b] + 1);
  }
  return out;
}

void check_plan(const CanonicalPair& cp, const RootPlan& plan) {
  const Verdict exists = existence(cp, plan.mode);
  if (!exists.ok) throw Error(ErrorCode::ExistenceViolation, exists.reason);
  const Verdict ok = admissible_for_mode(plan.pairing, tri_split(cp).zero, plan.mode);
  if (!ok.ok) throw Error(ErrorCode::ModeViolation, ok.reason);

  const auto pairs = plan.pairing.pairs();
  if (plan.params.size() != pairs.size()) {
    throw Error(ErrorCode::InvalidArgument, "one parameter set is needed per pair");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ParamKind kind = kind_of(plan.params[i]);
    if (!(pair_of(kind) == pairs[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(to_string(kind)) + " parameters do not fit pair (" +
                                                  std::to_string(pairs[i].first) + "," +
                                                  std::to_string(pairs[i].second) + ")");
    }
    if (plan.mode != Mode::General && !is_structured(kind)) {
      throw Error(ErrorCode::ModeViolation, std::string(to_string(kind)) + " does not give a structured root");
    }
    validate(plan.params[i]);
  }
  if (plan.signs.deltas.size() != cp.r()) {
    throw Error(ErrorCode::InvalidArgument, "one sign is needed per nonzero eigenvalue");
  }
  for (int d : plan.signs.deltas) {
    if (d != 1 && d != -1) throw Error(ErrorCode::InvalidArgument, "signs must be +1 or -1");
    if (plan.mode == Mode::Hnn && d != 1) {
      throw Error(ErrorCode::ModeViolation, "an H-nonnegative root takes the positive square root of each eigenvalue");
    }
  }
}

}  // namespace

ParamKind kind_of(const RootParams& params) noexcept { return static_cast<ParamKind>(params.index()); }

std::string_view to_string(ParamKind kind) noexcept {
  switch (kind) {
    case ParamKind::P10: return "P10";
    case ParamKind::P11: return "P11";
    case ParamKind::P11Upper: return "P11Upper";
    case ParamKind::P21: return "P21";
    case ParamKind::P22: return "P22";
    case ParamKind::P22Alt: return "P22Alt";
    case ParamKind::P11Hsa: return "P11Hsa";
    case ParamKind::P21Hsa: return "P21Hsa";
  }
  return "P10";
}

SegrePair pair_of(ParamKind kind) noexcept {
  switch (kind) {
    case ParamKind::P10: return {1, 0};
    case ParamKind::P11:
    case ParamKind::P11Upper:
    case ParamKind::P11Hsa: return {1, 1};
    case ParamKind::P21:
    case ParamKind::P21Hsa: return {2, 1};
    case ParamKind::P22:
    case ParamKind::P22Alt: return {2, 2};
  }
  return {1, 0};
}

void validate(const RootParams& params) {
  std::visit(Overloaded{
                 [](const P10&) {},
                 [](const P11& p) {
                   if (p.beta == 0.0) violation("P11 needs beta != 0");
                 },
                 [](const P11Upper& p) {
                   if (p.alpha == 0.0) violation("P11Upper needs alpha != 0");
                 },
                 [](const P21& p) {
                   if (p.beta == 0.0) violation("P21 needs beta != 0");
                 },
                 [](const P22& p) {
                   if (p.a1 == 0.0) violation("P22 needs alpha1 != 0");
                 },
                 [](const P22Alt& p) {
                   if (p.g1 == 0.0 || p.g2 == 0.0) violation("P22Alt needs gamma1, gamma2 != 0");
                 },
                 [](const P11Hsa& p) {
                   if (p.alpha == 0.0) violation("P11Hsa needs alpha != 0");
                   if (std::abs(std::abs(p.beta) - std::abs(p.alpha)) > kModulusTol * std::abs(p.alpha)) {
                     violation("P11Hsa needs |beta| = |alpha|");
                   }
                 },
                 [](const P21Hsa& p) {
                   if (std::abs(std::abs(p.beta) - 1.0) > kModulusTol) violation("P21Hsa needs |beta| = 1");
                 },
             },
             params);
  const double norm = param_norm(params);
  if (!std::isfinite(norm)) violation("parameters must be finite");
}

double param_norm(const RootParams& params) {
  auto sq = [](Complex z) { return std::norm(z); };
  return std::sqrt(std::visit(Overloaded{
                                  [](const P10&) { return 0.0; },
                                  [&](const P11& p) { return sq(p.alpha) + sq(p.beta); },
                                  [&](const P11Upper& p) { return sq(p.alpha); },
                                  [&](const P21& p) { return sq(p.alpha) + sq(p.beta); },
                                  [&](const P22& p) { return sq(p.a1) + sq(p.a2) + sq(p.a3) + sq(p.a4); },
                                  [&](const P22Alt& p) { return sq(p.g1) + sq(p.g2) + sq(p.g3); },
                                  [&](const P11Hsa& p) { return p.alpha * p.alpha + sq(p.beta); },
                                  [&](const P21Hsa& p) { return p.alpha * p.alpha + sq(p.beta); },
                              },
                              params));
}

ComplexMatrix target_block(SegrePair pair) {
  validate(pair);
  if (pair == SegrePair{1, 0}) return ComplexMatrix::Zero(1, 1);
  if (pair == SegrePair{1, 1}) return ComplexMatrix::Zero(2, 2);
  if (pair == SegrePair{2, 1}) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 1) = 1.0;
    return m;
  }
  if (pair == SegrePair{2, 2}) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 1) = 1.0;
    m(2, 3) = 1.0;
    return m;
  }
  throw Error(ErrorCode::UnsupportedEntry, "pairs beyond (2,2) are outside the supported class");
}

ComplexMatrix local_gramian(SegrePair pair) {
  if (pair == SegrePair{1, 0}) return ComplexMatrix::Identity(1, 1);
  if (pair == SegrePair{1, 1}) {
    ComplexMatrix h = ComplexMatrix::Identity(2, 2);
    h(1, 1) = -1.0;
    return h;
  }
  if (pair == SegrePair{2, 1}) {
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    place_block(h, sip(2), 0);
    h(2, 2) = 1.0;
    return h;
  }
  throw Error(ErrorCode::ModeViolation, "no structured root exists for this pair");
}

ComplexMatrix root_block(SegrePair pair, const RootParams& params) {
  validate(params);
  if (!(pair_of(kind_of(params)) == pair)) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(kind_of(params))) + " does not fit the pair");
  }
  return std::visit(
      Overloaded{
          [](const P10&) -> ComplexMatrix { return ComplexMatrix::Zero(1, 1); },
          [](const P11& p) -> ComplexMatrix {
            ComplexMatrix m(2, 2);
            m << p.alpha, -p.alpha * p.alpha / p.beta, p.beta, -p.alpha;
            return m;
          },
          [](const P11Upper& p) -> ComplexMatrix {
            ComplexMatrix m = ComplexMatrix::Zero(2, 2);
            m(0, 1) = p.alpha;
            return m;
          },
          [](const P21& p) -> ComplexMatrix {
            ComplexMatrix m = ComplexMatrix::Zero(3, 3);
            m(0, 1) = p.alpha;
            m(0, 2) = p.beta;
            m(2, 1) = 1.0 / p.beta;
            return m;
          },
          [](const P22& p) -> ComplexMatrix {
            const Complex corner = -p.a3 * p.a3 / p.a1;
            const Complex beta = (p.a1 + p.a3 * p.a3 * p.a2 - 2.0 * p.a1 * p.a3 * p.a4) / (p.a1 * p.a1);
            ComplexMatrix m(4, 4);
            m << -p.a3, -p.a4, corner, beta,   //
                0.0, -p.a3, 0.0, corner,       //
                p.a1, p.a2, p.a3, p.a4,        //
                0.0, p.a1, 0.0, p.a3;
            return m;
          },
          [](const P22Alt& p) -> ComplexMatrix {
            ComplexMatrix m = ComplexMatrix::Zero(4, 4);
            m(0, 1) = p.g1;
            m(0, 2) = p.g2;
            m(0, 3) = p.g3;
            m(1, 3) = p.g2;
            m(2, 1) = 1.0 / p.g2;
            m(2, 3) = -p.g1;
            return m;
          },
          [](const P11Hsa& p) -> ComplexMatrix {
            ComplexMatrix m(2, 2);
            m << p.alpha, -std::conj(p.beta), p.beta, -p.alpha;
            return m;
          },
          [](const P21Hsa& p) -> ComplexMatrix {
            ComplexMatrix m = ComplexMatrix::Zero(3, 3);
            m(0, 1) = p.alpha;
            m(0, 2) = p.beta;
            m(2, 1) = 1.0 / p.beta;
            return m;
          },
      },
      params);
}

ComplexMatrix root_block_structured(SegrePair pair, const RootParams& params, Mode mode) {
  if (mode == Mode::General) throw Error(ErrorCode::ModeViolation, "structured roots need mode hsa or hnn");
  if (pair == SegrePair{2, 2}) throw Error(ErrorCode::ModeViolation, "(2,2) never has a structured root");
  if (mode == Mode::Hnn && pair == SegrePair{2, 1}) {
    throw Error(ErrorCode::ModeViolation, "(2,1) has no H-nonnegative root");
  }
  const ParamKind kind = kind_of(params);
  if (!is_structured(kind)) {
    throw Error(ErrorCode::ModeViolation, std::string(to_string(kind)) + " does not give a structured root");
  }
  if (mode == Mode::Hnn && kind == ParamKind::P11Hsa && std::get<P11Hsa>(params).alpha < 0.0) {
    throw Error(ErrorCode::ModeViolation, "an H-nonnegative (1,1) root needs alpha > 0");
  }
  return root_block(pair, params);
}

RootParams sample_params(ParamKind kind, std::mt19937_64& rng, Mode mode) {
  const bool positive = mode == Mode::Hnn;
  switch (kind) {
    case ParamKind::P10: return P10{};
    case ParamKind::P11: {
      const Complex a = random_complex(rng);
      return P11{a, random_complex(rng)};
    }
    case ParamKind::P11Upper: return P11Upper{random_complex(rng)};
    case ParamKind::P21: {
      const Complex a = random_complex(rng);
      return P21{a, random_complex(rng)};
    }
    case ParamKind::P22: {
      const Complex a1 = random_complex(rng);
      const Complex a2 = random_complex(rng);
      const Complex a3 = random_complex(rng);
      return P22{a1, a2, a3, random_complex(rng)};
    }
    case ParamKind::P22Alt: {
      const Complex g1 = random_complex(rng);
      const Complex g2 = random_complex(rng);
      return P22Alt{g1, g2, random_complex(rng)};
    }
    case ParamKind::P11Hsa: {
      const double a = random_real(rng, positive);
      return P11Hsa{a, std::abs(a) * unit_phase(rng)};
    }
    case ParamKind::P21Hsa: {
      const double a = random_real(rng, false);
      return P21Hsa{a, unit_phase(rng)};
    }
  }
  return P10{};
}

RootParams sample_params(SegrePair pair, Mode mode, std::mt19937_64& rng) {
  validate(pair);
  std::bernoulli_distribution coin(0.5);
  if (pair == SegrePair{1, 0}) return P10{};
  if (mode == Mode::General) {
    if (pair == SegrePair{1, 1}) return sample_params(coin(rng) ? ParamKind::P11 : ParamKind::P11Upper, rng, mode);
    if (pair == SegrePair{2, 1}) return sample_params(ParamKind::P21, rng, mode);
    return sample_params(coin(rng) ? ParamKind::P22 : ParamKind::P22Alt, rng, mode);
  }
  if (pair == SegrePair{1, 1}) return sample_params(ParamKind::P11Hsa, rng, mode);
  if (pair == SegrePair{2, 1} && mode == Mode::Hsa) return sample_params(ParamKind::P21Hsa, rng, mode);
  throw Error(ErrorCode::ModeViolation, "no structured root exists for this pair in mode " +
                                            std::string(to_string(mode)));
}

RootParams sample_params(SegrePair pair, Mode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_params(pair, mode, rng);
}

std::vector<std::vector<std::size_t>> assign_blocks(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode) {
  std::vector<std::size_t> plus, minus, doubles;
  for (std::size_t i = 0; i < cp.blocks().size(); ++i) {
    const auto& b = cp.blocks()[i];
    if (b.eigenvalue != 0.0) continue;
    if (b.size == 2) doubles.push_back(i);
    else (b.sign > 0 ? plus : minus).push_back(i);
  }
  std::size_t next_double = 0, next_plus = 0, next_minus = 0;
  auto take_single = [&](bool want_plus) -> std::size_t {
    if (want_plus && next_plus < plus.size()) return plus[next_plus++];
    if (!want_plus && next_minus < minus.size()) return minus[next_minus++];
    throw Error(ErrorCode::ModeViolation, "not enough zero blocks of the required sign");
  };
  auto take_any = [&]() { return take_single(next_plus < plus.size()); };
  auto take_double = [&]() -> std::size_t {
    if (next_double < doubles.size()) return doubles[next_double++];
    throw Error(ErrorCode::PairingMismatch, "pairing needs more size-2 blocks than present");
  };

  const bool structured = mode != Mode::General;
  std::vector<std::vector<std::size_t>> out;
  for (const SegrePair& p : pairing.pairs()) {
    if (p == SegrePair{2, 2}) {
      const std::size_t a = take_double();
      out.push_back({a, take_double()});
    } else if (p == SegrePair{2, 1}) {
      const std::size_t d = take_double();
      out.push_back({d, structured ? take_single(true) : take_any()});
    } else if (p == SegrePair{1, 1}) {
      if (structured) {
        const std::size_t a = take_single(true);
        out.push_back({a, take_single(false)});
      } else {
        const std::size_t a = take_any();
        out.push_back({a, take_any()});
      }
    } else {
      out.push_back({take_any()});
    }
  }
  if (next_double != doubles.size() || next_plus != plus.size() || next_minus != minus.size()) {
    throw Error(ErrorCode::PairingMismatch, "pairing leaves zero blocks unassigned");
  }
  return out;
}

RootPlan make_plan(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode, std::vector<RootParams> params,
                   RootSignChoice signs) {
  RootPlan plan{pairing, mode, std::move(params), std::move(signs), {}};
  check_plan(cp, plan);
  plan.block_assignment = assign_blocks(cp, pairing, mode);
  return plan;
}

RootPlan sample_plan(const CanonicalPair& cp, const SegrePairing& pairing, Mode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RootParams> params;
  for (const SegrePair& p : pairing.pairs()) params.push_back(sample_params(p, mode, rng));
  RootSignChoice signs;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < cp.r(); ++i) signs.deltas.push_back(mode == Mode::Hnn || coin(rng) ? 1 : -1);
  return make_plan(cp, pairing, mode, std::move(params), std::move(signs));
}

ComplexMatrix assemble_root(const CanonicalPair& cp, const RootPlan& plan) {
  check_plan(cp, plan);
  const auto assignment = plan.block_assignment.empty() ? assign_blocks(cp, plan.pairing, plan.mode)
                                                        : plan.block_assignment;
  const auto n = static_cast<Eigen::Index>(cp.dimension());
  ComplexMatrix A = ComplexMatrix::Zero(n, n);
  const auto offs = cp.offsets();
  std::size_t sign_index = 0;
  for (std::size_t i = 0; i < cp.blocks().size(); ++i) {
    const double lambda = cp.blocks()[i].eigenvalue;
    if (lambda == 0.0) continue;
    const double delta = plan.signs.deltas[sign_index++];
    A(offs[i], offs[i]) = lambda > 0.0 ? Complex(delta * std::sqrt(lambda), 0.0)
                                       : Complex(0.0, delta * std::sqrt(-lambda));
  }
  const auto pairs = plan.pairing.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const ComplexMatrix block = plan.mode == Mode::General ? root_block(pairs[k], plan.params[k])
                                                           : root_block_structured(pairs[k], plan.params[k], plan.mode);
    embed(A, block, template_indices(cp, assignment[k]));
  }
  return A;
}

std::vector<PredictedBlock> predicted_jordan_form(const SegrePairing& pairing, const CanonicalPair& cp,
                                                  const RootSignChoice& signs, Mode mode) {
  const Verdict ok = admissible_for_mode(pairing, tri_split(cp).zero, mode);
  if (!ok.ok) throw Error(ErrorCode::ModeViolation, ok.reason);
  if (signs.deltas.size() != cp.r()) throw Error(ErrorCode::InvalidArgument, "one sign is needed per nonzero eigenvalue");

  const bool structured = mode != Mode::General;
  std::vector<PredictedBlock> out;
  std::size_t sign_index = 0;
  for (const auto& b : cp.blocks()) {
    if (b.eigenvalue == 0.0) continue;
    const double delta = signs.deltas[sign_index++];
    const Complex value = b.eigenvalue > 0.0 ? Complex(delta * std::sqrt(b.eigenvalue), 0.0)
                                             : Complex(0.0, delta * std::sqrt(-b.eigenvalue));
    out.push_back({value, 1, structured ? 1 : 0});
  }
  const auto assignment = assign_blocks(cp, pairing, mode);
  const auto pairs = pairing.pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const SegrePair p = pairs[k];
    if (p == SegrePair{1, 0}) {
      out.push_back({0.0, 1, structured ? cp.blocks()[assignment[k][0]].sign : 0});
    } else if (p == SegrePair{1, 1}) {
      // The sign of a J_2(0) root block is only fixed in the H-nonnegative case.
      out.push_back({0.0, 2, mode == Mode::Hnn ? 1 : 0});
    } else if (p == SegrePair{2, 1}) {
      out.push_back({0.0, 3, structured ? 1 : 0});
    } else {
      out.push_back({0.0, 4, 0});
    }
  }
  return out;
}

JordanData to_jordan_data(const std::vector<PredictedBlock>& blocks) {
  JordanData out;
  for (const auto& b : blocks) out.blocks.push_back({b.eigenvalue, b.size});
  return out;
}

Verdict existence(const CanonicalPair& cp, Mode mode) {
  const SegreCharacteristic sc = segre_characteristic(tri_split(cp).zero);
  if (mode == Mode::General) {
    if (has_square_root(sc)) return {true, "Segre pairing exists for the zero part"};
    return {false, "odd number of J2(0) blocks and no J1(0) block: no Segre pairing"};
  }
  if (cp.negative_count() > 0) return {false, "negative eigenvalue present: spectrum not in [0, inf)"};
  if (mode == Mode::Hsa) {
    if (cp.s_plus() >= cp.t()) return {true, "spectrum in [0, inf) and s+ >= t"};
    return {false, "s+ >= t violated (s+=" + std::to_string(cp.s_plus()) + ", t=" + std::to_string(cp.t()) + ")"};
  }
  if (cp.t() == 0) return {true, "spectrum in [0, inf) and t=0"};
  return {false, "t=0 violated (t=" + std::to_string(cp.t()) + ")"};
}

}  // namespace indefsqrt
