#include "indefsqrt/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

// Rank inside the zero-eigenvalue group: +1 singles, -1 singles, doubles.
int zero_group_rank(const CanonicalBlock& b) {
  if (b.size == 2) return 2;
  return b.sign > 0 ? 0 : 1;
}

bool canonical_less(const CanonicalBlock& a, const CanonicalBlock& b) {
  if (a.eigenvalue != b.eigenvalue) return a.eigenvalue > b.eigenvalue;
  return zero_group_rank(a) < zero_group_rank(b);
}

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double m = std::abs(rr(j, j));
    if (m > 0.0) q.col(j) *= rr(j, j) / m;
  }
  return q;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_pair_shape(const ComplexMatrix& B, const ComplexMatrix& H) {
  require_square(B, "B");
  require_square(H, "H");
  if (B.rows() != H.rows()) throw Error(ErrorCode::DimensionMismatch, "B and H differ in size");
  if (B.rows() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrices");
  require_finite(B, "B");
  require_finite(H, "H");
}

// Canonical block together with the columns of S that realize it.
struct PlacedBlock {
  CanonicalBlock block;
  ComplexMatrix columns;
};

}  // namespace

void validate(const CanonicalBlock& b) {
  if (!std::isfinite(b.eigenvalue)) throw Error(ErrorCode::InvalidArgument, "block eigenvalue is not finite");
  if (b.size != 1 && b.size != 2) throw Error(ErrorCode::InvalidArgument, "block size must be 1 or 2");
  if (b.sign != 1 && b.sign != -1) throw Error(ErrorCode::InvalidArgument, "block sign must be +1 or -1");
  if (b.size == 2 && (b.eigenvalue != 0.0 || b.sign != 1)) {
    throw Error(ErrorCode::InvalidArgument, "size-2 blocks must sit at eigenvalue 0 with sign +1");
  }
  if (b.eigenvalue > 0.0 && b.sign != 1) throw Error(ErrorCode::InvalidArgument, "positive eigenvalue needs sign +1");
  if (b.eigenvalue < 0.0 && b.sign != -1) throw Error(ErrorCode::InvalidArgument, "negative eigenvalue needs sign -1");
}

CanonicalPair::CanonicalPair(std::vector<CanonicalBlock> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) validate(b);
  std::stable_sort(blocks_.begin(), blocks_.end(), canonical_less);
}

std::size_t CanonicalPair::dimension() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += static_cast<std::size_t>(b.size);
  return n;
}

std::vector<Eigen::Index> CanonicalPair::offsets() const {
  std::vector<Eigen::Index> out;
  out.reserve(blocks_.size());
  Eigen::Index at = 0;
  for (const auto& b : blocks_) {
    out.push_back(at);
    at += b.size;
  }
  return out;
}

std::size_t CanonicalPair::q() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.eigenvalue > 0.0; }));
}

std::size_t CanonicalPair::r() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.eigenvalue != 0.0; }));
}

std::size_t CanonicalPair::s_plus() const noexcept {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) {
    return b.eigenvalue == 0.0 && b.size == 1 && b.sign > 0;
  }));
}

std::size_t CanonicalPair::s_minus() const noexcept {
  return static_cast<std::size_t>(std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) {
    return b.eigenvalue == 0.0 && b.size == 1 && b.sign < 0;
  }));
}

std::size_t CanonicalPair::t() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(blocks_.begin(), blocks_.end(), [](const auto& b) { return b.size == 2; }));
}

bool same_structure(const CanonicalPair& a, const CanonicalPair& b, double rel) {
  if (a.blocks().size() != b.blocks().size()) return false;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    const auto& x = a.blocks()[i];
    const auto& y = b.blocks()[i];
    if (x.size != y.size || x.sign != y.sign) return false;
    const double scale = std::max(std::abs(x.eigenvalue), std::abs(y.eigenvalue));
    if (std::abs(x.eigenvalue - y.eigenvalue) > rel * scale) return false;
  }
  return true;
}

MatrixPair synthesize(const CanonicalPair& cp) {
  const auto n = static_cast<Eigen::Index>(cp.dimension());
  MatrixPair out{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
  const auto offs = cp.offsets();
  for (std::size_t i = 0; i < cp.blocks().size(); ++i) {
    const auto& b = cp.blocks()[i];
    place_block(out.B, jordan_block(static_cast<std::size_t>(b.size), b.eigenvalue), offs[i]);
    place_block(out.H, static_cast<double>(b.sign) * sip(static_cast<std::size_t>(b.size)), offs[i]);
  }
  return out;
}

MatrixPair apply_transform(const MatrixPair& pair, const ComplexMatrix& S) {
  Eigen::PartialPivLU<ComplexMatrix> lu(S);
  return {lu.solve(pair.B * S), hermitian_part(S.adjoint() * pair.H * S)};
}

ScrambledPair scramble(const CanonicalPair& cp, std::uint64_t seed, double cond_cap) {
  if (!(cond_cap > 1.0)) throw Error(ErrorCode::InvalidArgument, "cond_cap must exceed 1");
  const auto n = static_cast<Eigen::Index>(cp.dimension());
  std::mt19937_64 rng(seed);
  const ComplexMatrix U = random_unitary(n, rng);
  const ComplexMatrix V = random_unitary(n, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) sigma(i) = std::pow(cond_cap, unit(rng));
  const ComplexMatrix S = U * sigma.asDiagonal() * V.adjoint();
  const MatrixPair moved = apply_transform(synthesize(cp), S);
  return {moved.B, moved.H, S};
}

void validate_gramian(const ComplexMatrix& H, const Tolerance& tol) {
  require_square(H, "H");
  const double norm = spectral_norm(H);
  if (spectral_norm(H - H.adjoint()) > tol.threshold(norm)) {
    throw Error(ErrorCode::GramianNotHermitian, "H is not Hermitian within tolerance");
  }
  const RealVector sv = singular_values(H);
  if (sv.size() == 0 || sv(sv.size() - 1) <= tol.threshold(norm)) {
    throw Error(ErrorCode::GramianSingular, "H is singular within tolerance");
  }
}

bool is_H_selfadjoint(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol) {
  require_pair_shape(B, H);
  validate_gramian(H, tol);
  const ComplexMatrix HB = H * B;
  return spectral_norm(HB - HB.adjoint()) <= tol.threshold(spectral_norm(HB));
}

bool is_H_nonnegative(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol) {
  if (!is_H_selfadjoint(B, H, tol)) return false;
  const ComplexMatrix P = hermitian_part(H * B);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(P, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol.threshold(scale);
}

// The nonzero spectrum is read from the Hermitian matrix
// T = M^{1/2} V^* H^{-1} V M^{1/2}, where HB = V M V^* is the compact
// eigendecomposition of the positive part of HB. T shares the nonzero
// eigenvalues of B = (H^{-1} V M^{1/2})(M^{1/2} V^*), but unlike B it is
// Hermitian, so a J_2(0) block shows up as a clean zero instead of a pair of
// O(sqrt(eps)) eigenvalues.
CanonicalForm canonicalize(const ComplexMatrix& B, const ComplexMatrix& H, const Tolerance& tol) {
  validate(tol);
  if (!is_H_nonnegative(B, H, tol)) throw Error(ErrorCode::NotHNonnegative, "B is not H-nonnegative");

  const Eigen::Index n = B.rows();
  const double norm_b = spectral_norm(B);
  const double norm_h = spectral_norm(H);
  const ComplexMatrix P = hermitian_part(H * B);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> p_eig(P);
  const RealVector& mu = p_eig.eigenvalues();
  const double norm_p = std::max(std::abs(mu(0)), std::abs(mu(n - 1)));
  const double p_cut = tol.threshold(norm_p);
  const Eigen::Index p = (mu.array() > p_cut).count();
  // Eigenvalues are ascending, so the positive part sits in the last p columns.
  const ComplexMatrix V = p_eig.eigenvectors().rightCols(p);
  const RealVector root_mu = mu.tail(p).cwiseSqrt();

  Eigen::PartialPivLU<ComplexMatrix> h_lu(H);
  const ComplexMatrix left = h_lu.solve(V) * root_mu.asDiagonal();  // H^{-1} V M^{1/2}
  const ComplexMatrix T = hermitian_part(root_mu.asDiagonal() * (V.adjoint() * left));

  std::vector<PlacedBlock> placed;
  ComplexMatrix nonzero_vectors(n, 0);
  if (p > 0) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> t_eig(T);
    const double zero_cut = tol.threshold(norm_b);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double lambda = t_eig.eigenvalues()(i);
      if (std::abs(lambda) <= zero_cut) continue;
      // x = left * w has x^* H x = w^* T w = lambda.
      const ComplexVector x = left * t_eig.eigenvectors().col(i) / std::sqrt(std::abs(lambda));
      placed.push_back({{lambda, 1, lambda > 0.0 ? 1 : -1}, x});
      nonzero_vectors.conservativeResize(n, nonzero_vectors.cols() + 1);
      nonzero_vectors.col(nonzero_vectors.cols() - 1) = x;
    }
  }
  const Eigen::Index r = nonzero_vectors.cols();
  const Eigen::Index t = p - r;

  // Generalized zero eigenspace: H-orthogonal complement of the nonzero part.
  const ComplexMatrix K0 = r > 0 ? kernel_basis((H * nonzero_vectors).adjoint(), tol)
                                 : ComplexMatrix(ComplexMatrix::Identity(n, n));
  const Eigen::Index m0 = n - r;
  if (K0.cols() != m0 || m0 < 2 * t) {
    throw Error(ErrorCode::IllConditioned, "zero eigenspace dimension is inconsistent with rank data");
  }

  if (m0 > 0) {
    const ComplexMatrix N = K0.adjoint() * B * K0;
    const ComplexMatrix H0 = hermitian_part(K0.adjoint() * H * K0);
    const ComplexMatrix G = hermitian_part(K0.adjoint() * P * K0);  // = H0 N, PSD of rank t

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> g_eig(G);
    const Eigen::Index t_seen = (g_eig.eigenvalues().array() > p_cut).count();
    if (t_seen != t) {
      throw Error(ErrorCode::IllConditioned, "cannot separate size-2 blocks from the nonzero spectrum");
    }
    // Chain tails y with [N y_i, y_j] = delta_ij, then shift them along the
    // heads x = N y so that [y_i, y_j] = 0 as well.
    ComplexMatrix Y = g_eig.eigenvectors().rightCols(t);
    for (Eigen::Index i = 0; i < t; ++i) Y.col(i) /= std::sqrt(g_eig.eigenvalues()(m0 - t + i));
    const ComplexMatrix X = N * Y;
    const ComplexMatrix C = Y.adjoint() * H0 * Y;
    const ComplexMatrix Y2 = Y - 0.5 * X * C;

    const Eigen::Index singles = m0 - 2 * t;
    if (singles > 0) {
      ComplexMatrix chains(m0, 2 * t);
      chains << X, Y2;
      const ComplexMatrix Z = t > 0 ? kernel_basis(chains.adjoint() * H0, tol)
                                    : ComplexMatrix(ComplexMatrix::Identity(m0, m0));
      if (Z.cols() != singles) {
        throw Error(ErrorCode::IllConditioned, "size-1 zero blocks are not H-orthogonal to the chains");
      }
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> z_eig(hermitian_part(Z.adjoint() * H0 * Z));
      const double z_cut = tol.threshold(norm_h);
      for (Eigen::Index i = 0; i < singles; ++i) {
        const double nu = z_eig.eigenvalues()(i);
        if (std::abs(nu) <= z_cut) {
          throw Error(ErrorCode::IllConditioned, "degenerate Gramian on the size-1 zero blocks");
        }
        const ComplexVector z = K0 * (Z * z_eig.eigenvectors().col(i)) / std::sqrt(std::abs(nu));
        placed.push_back({{0.0, 1, nu > 0.0 ? 1 : -1}, z});
      }
    }
    for (Eigen::Index i = 0; i < t; ++i) {
      ComplexMatrix cols(n, 2);
      cols.col(0) = K0 * X.col(i);
      cols.col(1) = K0 * Y2.col(i);
      placed.push_back({{0.0, 2, 1}, cols});
    }
  }

  std::stable_sort(placed.begin(), placed.end(),
                   [](const PlacedBlock& a, const PlacedBlock& b) { return canonical_less(a.block, b.block); });
  std::vector<CanonicalBlock> blocks;
  ComplexMatrix S(n, n);
  Eigen::Index at = 0;
  for (const auto& pb : placed) {
    blocks.push_back(pb.block);
    S.middleCols(at, pb.columns.cols()) = pb.columns;
    at += pb.columns.cols();
  }
  if (at != n) throw Error(ErrorCode::IllConditioned, "canonical basis does not span the space");
  CanonicalForm out{CanonicalPair(std::move(blocks)), S, condition_number(S)};
  return out;
}

TriSplit tri_split(const CanonicalPair& cp) {
  std::vector<CanonicalBlock> neg, zero, pos;
  for (const auto& b : cp.blocks()) {
    if (b.eigenvalue < 0.0) neg.push_back(b);
    else if (b.eigenvalue > 0.0) pos.push_back(b);
    else zero.push_back(b);
  }
  return {CanonicalPair(std::move(neg)), CanonicalPair(std::move(zero)), CanonicalPair(std::move(pos))};
}

}  // namespace indefsqrt
