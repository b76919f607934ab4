#include "indefsqrt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "indefsqrt/error.hpp"

namespace indefsqrt {

double Tolerance::threshold(double scale) const noexcept { return std::max(abs, rel * scale); }

void validate(const Tolerance& tol) {
  if (!(tol.rel >= 0.0) || !(tol.abs >= 0.0) || !std::isfinite(tol.rel) || !std::isfinite(tol.abs)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance components must be finite and nonnegative");
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is not square");
  }
}

RealVector singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return RealVector();
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

std::size_t rank(const ComplexMatrix& m, const Tolerance& tol) {
  const RealVector sv = singular_values(m);
  if (sv.size() == 0) return 0;
  const double cut = tol.threshold(sv(0));
  return static_cast<std::size_t>((sv.array() > cut).count());
}

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix skew = m - m.adjoint();
  return spectral_norm(skew) <= tol.threshold(spectral_norm(m));
}

HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "matrix");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerance& tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cut = tol.threshold(sv.size() ? sv(0) : 0.0);
  const Eigen::Index r = (sv.array() > cut).count();
  return svd.matrixV().rightCols(cols - r);
}

ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const RealVector& sv = svd.singularValues();
  const double cut = tol.threshold(sv.size() ? sv(0) : 0.0);
  const Eigen::Index r = (sv.array() > cut).count();
  return svd.matrixU().leftCols(r);
}

double condition_number(const ComplexMatrix& m) {
  const RealVector sv = singular_values(m);
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

ComplexMatrix sip(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  ComplexMatrix q = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) q(i, k - 1 - i) = 1.0;
  return q;
}

ComplexMatrix jordan_block(std::size_t n, Complex eigenvalue) {
  const auto k = static_cast<Eigen::Index>(n);
  ComplexMatrix j = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    j(i, i) = eigenvalue;
    if (i + 1 < k) j(i, i + 1) = 1.0;
  }
  return j;
}

void place_block(ComplexMatrix& target, const ComplexMatrix& block, Eigen::Index offset) {
  target.block(offset, offset, block.rows(), block.cols()) = block;
}

}  // namespace indefsqrt
