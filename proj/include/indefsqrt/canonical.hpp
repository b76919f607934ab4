#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "indefsqrt/linalg.hpp"

namespace indefsqrt {

/// One Jordan block J_size(eigenvalue) paired with sign * Q_size in the
/// Gramian. Only the shapes that occur for H-nonnegative matrices are
/// representable: size 2 requires eigenvalue 0 and sign +1, and a nonzero
/// eigenvalue carries the sign of the eigenvalue.
struct CanonicalBlock {
  double eigenvalue = 0.0;
  int size = 1;
  int sign = 1;

  bool operator==(const CanonicalBlock&) const = default;
};

/// Throws InvalidArgument if the block is not an H-nonnegative shape.
void validate(const CanonicalBlock& block);

/// A multiset of canonical blocks kept in the fixed order: descending
/// eigenvalue, and at zero the +1 singles, then -1 singles, then doubles.
class CanonicalPair {
 public:
  CanonicalPair() = default;
  explicit CanonicalPair(std::vector<CanonicalBlock> blocks);

  const std::vector<CanonicalBlock>& blocks() const noexcept { return blocks_; }
  bool empty() const noexcept { return blocks_.empty(); }
  std::size_t dimension() const noexcept;

  /// Row/column offset of each block inside synthesize(*this).
  std::vector<Eigen::Index> offsets() const;

  std::size_t q() const noexcept;  // positive eigenvalues
  std::size_t r() const noexcept;  // nonzero eigenvalues
  std::size_t negative_count() const noexcept { return r() - q(); }
  std::size_t s() const noexcept { return s_plus() + s_minus(); }
  std::size_t s_plus() const noexcept;
  std::size_t s_minus() const noexcept;
  std::size_t t() const noexcept;  // J_2(0) blocks

  bool operator==(const CanonicalPair&) const = default;

 private:
  std::vector<CanonicalBlock> blocks_;
};

/// Same block shapes and signs, eigenvalues equal within `rel` relative error.
bool same_structure(const CanonicalPair& a, const CanonicalPair& b, double rel);

struct MatrixPair {
  ComplexMatrix B;
  ComplexMatrix H;
};

MatrixPair synthesize(const CanonicalPair& cp);

/// Returns (S^{-1} B S, S^* H S).
MatrixPair apply_transform(const MatrixPair& pair, const ComplexMatrix& S);

struct ScrambledPair {
  ComplexMatrix B;
  ComplexMatrix H;
  ComplexMatrix S;
};

/// Random congruence of synthesize(cp) with cond(S) <= cond_cap, fully
/// determined by the seed.
ScrambledPair scramble(const CanonicalPair& cp, std::uint64_t seed, double cond_cap);

/// Throws GramianNotHermitian / GramianSingular for an unusable H.
void validate_gramian(const ComplexMatrix& H, const Tolerance& tol = {});

bool is_H_selfadjoint(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol = {});
bool is_H_nonnegative(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol = {});

struct CanonicalForm {
  CanonicalPair pair;
  ComplexMatrix S;           // S^{-1} B S and S^* H S are synthesize(pair)
  double condition = 1.0;    // cond(S), reported but not capped
};

/// Reduces an H-nonnegative pair to canonical form. Throws NotHNonnegative or
/// IllConditioned.
CanonicalForm canonicalize(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol = {});

struct TriSplit {
  CanonicalPair negative;
  CanonicalPair zero;
  CanonicalPair positive;
};

TriSplit tri_split(const CanonicalPair& cp);

}  // namespace indefsqrt
