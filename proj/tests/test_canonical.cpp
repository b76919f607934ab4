#include <doctest.h>

#include <random>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/error.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace indefsqrt;
using testing::cp;
using testing::mat;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

void check_form(const ComplexMatrix& B, const ComplexMatrix& H, const CanonicalForm& f) {
  const MatrixPair target = synthesize(f.pair);
  const MatrixPair got = apply_transform({B, H}, f.S);
  const double scale = std::max(1.0, f.condition * f.condition);
  CHECK(spectral_norm(got.B - target.B) <= 1e-8 * scale * std::max(1.0, spectral_norm(B)));
  CHECK(spectral_norm(got.H - target.H) <= 1e-8 * scale * std::max(1.0, spectral_norm(H)));
}

}  // namespace

TEST_CASE("block invariants") {
  CHECK_NOTHROW(validate(CanonicalBlock{0.0, 2, 1}));
  CHECK_THROWS_AS(validate(CanonicalBlock{0.0, 2, -1}), Error);
  CHECK_THROWS_AS(validate(CanonicalBlock{1.0, 2, 1}), Error);
  CHECK_THROWS_AS(validate(CanonicalBlock{1.0, 1, -1}), Error);
  CHECK_THROWS_AS(validate(CanonicalBlock{-1.0, 1, 1}), Error);
  CHECK_THROWS_AS(validate(CanonicalBlock{0.0, 3, 1}), Error);
}

TEST_CASE("canonical ordering") {
  const CanonicalPair p = cp({{0, 2, 1}, {-3, 1, -1}, {0, 1, -1}, {7, 1, 1}, {0, 1, 1}});
  const std::vector<CanonicalBlock> expect{{7, 1, 1}, {0, 1, 1}, {0, 1, -1}, {0, 2, 1}, {-3, 1, -1}};
  CHECK(p.blocks() == expect);
  CHECK(p.dimension() == 6);
  CHECK(p.q() == 1);
  CHECK(p.r() == 2);
  CHECK(p.s_plus() == 1);
  CHECK(p.s_minus() == 1);
  CHECK(p.t() == 1);
}

TEST_CASE("synthesize") {
  auto a = synthesize(cp({{0, 2, 1}}));
  CHECK(a.B == mat({{0, 1}, {0, 0}}));
  CHECK(a.H == mat({{0, 1}, {1, 0}}));
  auto b = synthesize(cp({{2, 1, 1}}));
  CHECK(b.B == mat({{2}}));
  CHECK(b.H == mat({{1}}));
  auto c = synthesize(cp({{0, 1, 1}, {0, 1, -1}}));
  CHECK(c.B == ComplexMatrix::Zero(2, 2));
  CHECK(c.H == mat({{1, 0}, {0, -1}}));
}

TEST_CASE("selfadjointness and nonnegativity") {
  const ComplexMatrix J2 = jordan_block(2, 0.0);
  CHECK(is_H_selfadjoint(J2, sip(2)));
  CHECK_FALSE(is_H_selfadjoint(J2, ComplexMatrix::Identity(2, 2)));
  CHECK(is_H_selfadjoint(mat({{-3, 0}, {0, -3}}), ComplexMatrix::Identity(2, 2)));
  CHECK(is_H_nonnegative(J2, sip(2)));
  CHECK_FALSE(is_H_nonnegative(J2, -sip(2)));
  CHECK(is_H_nonnegative(ComplexMatrix::Zero(3, 3), mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}})));
  CHECK(code_of([&] { is_H_selfadjoint(J2, mat({{0, 1}, {0, 0}})); }) == ErrorCode::GramianNotHermitian);
  CHECK(code_of([&] { is_H_selfadjoint(J2, mat({{1, 0}, {0, 0}})); }) == ErrorCode::GramianSingular);
}

TEST_CASE("synthesized pairs are H-nonnegative") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_cp(rng, 10);
    const auto m = synthesize(p);
    CHECK(is_H_nonnegative(m.B, m.H));
  }
}

TEST_CASE("canonicalize examples") {
  const auto f = canonicalize(jordan_block(2, 0.0), sip(2));
  CHECK(f.pair == cp({{0, 2, 1}}));
  check_form(jordan_block(2, 0.0), sip(2), f);

  const ComplexMatrix B = mat({{5, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const ComplexMatrix H = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  const auto g = canonicalize(B, H);
  CHECK(same_structure(g.pair, cp({{5, 1, 1}, {0, 1, 1}, {0, 1, -1}}), 1e-12));
  check_form(B, H, g);

  const auto target = cp({{3, 1, 1}, {0, 1, -1}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = scramble(target, seed, 50.0);
    CHECK(same_structure(canonicalize(s.B, s.H).pair, target, 1e-9));
  }

  CHECK(code_of([&] { canonicalize(jordan_block(2, 0.0), -sip(2)); }) == ErrorCode::NotHNonnegative);
  CHECK(code_of([&] { canonicalize(mat({{-1}}), mat({{1}})); }) == ErrorCode::NotHNonnegative);
}

TEST_CASE("scramble") {
  const auto p = cp({{2, 1, 1}, {0, 1, 1}, {0, 2, 1}});
  const auto a = scramble(p, 5, 100.0);
  const auto b = scramble(p, 5, 100.0);
  CHECK(a.B == b.B);
  CHECK(a.S == b.S);
  CHECK(condition_number(a.S) <= 100.0 * (1 + 1e-9));
  const auto back = apply_transform(synthesize(p), a.S);
  CHECK(spectral_norm(back.B - a.B) < 1e-12 * std::max(1.0, spectral_norm(a.B)));
  const auto same = apply_transform(synthesize(p), ComplexMatrix::Identity(4, 4));
  CHECK(same.B == synthesize(p).B);
  CHECK(same.H == synthesize(p).H);
  CHECK_THROWS_AS(scramble(p, 1, 1.0), Error);
}

TEST_CASE("tri split") {
  const auto t = tri_split(cp({{-3, 1, -1}, {0, 2, 1}, {7, 1, 1}}));
  CHECK(t.negative == cp({{-3, 1, -1}}));
  CHECK(t.zero == cp({{0, 2, 1}}));
  CHECK(t.positive == cp({{7, 1, 1}}));
  const auto z = tri_split(testing::zero_cp(1, 1, 1));
  CHECK(z.negative.empty());
  CHECK(z.positive.empty());
  const auto pd = tri_split(cp({{1, 1, 1}, {2, 1, 1}}));
  CHECK(pd.zero.empty());
  CHECK(pd.positive.dimension() == 2);
}

TEST_CASE("round trip and invariance under scrambling") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 150; ++i) {
    const auto p = testing::random_cp(rng, 10);
    const auto s = scramble(p, rng(), 100.0);
    const auto f = canonicalize(s.B, s.H);
    CHECK(same_structure(f.pair, p, 1e-6));
    check_form(s.B, s.H, f);
    const auto s2 = scramble(p, rng(), 30.0);
    CHECK(same_structure(canonicalize(s2.B, s2.H).pair, f.pair, 1e-6));
  }
}

TEST_CASE("signature conservation") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150; ++i) {
    const auto p = testing::random_cp(rng, 10);
    const auto s = scramble(p, rng(), 100.0);
    const auto f = canonicalize(s.B, s.H);
    const auto [pos, neg] = oracle::inertia(s.H, 1e-9);
    const long predicted = static_cast<long>(f.pair.s_plus()) - static_cast<long>(f.pair.s_minus()) +
                           static_cast<long>(f.pair.q()) - static_cast<long>(f.pair.r() - f.pair.q());
    CHECK(pos + neg == static_cast<int>(p.dimension()));
    CHECK(static_cast<long>(pos - neg) == predicted);
  }
}

TEST_CASE("canonicalize handles nearby nonzero eigenvalues and tiny scales") {
  const auto p = cp({{1.0, 1, 1}, {1.0 + 1e-7, 1, 1}, {0, 2, 1}, {0, 1, -1}});
  const auto s = scramble(p, 3, 20.0);
  CHECK(same_structure(canonicalize(s.B, s.H).pair, p, 1e-6));
  const auto q = cp({{1e-3, 1, 1}, {0, 1, 1}});
  const auto f = canonicalize(synthesize(q).B, synthesize(q).H);
  CHECK(same_structure(f.pair, q, 1e-6));
}
