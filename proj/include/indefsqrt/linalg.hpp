#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace indefsqrt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Approximate comparisons use max(abs, rel * scale) where scale is the
/// spectral norm of whatever matrix gives the comparison its context.
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;

  double threshold(double scale) const noexcept;
};

void validate(const Tolerance& tol);

/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);
void require_square(const ComplexMatrix& m, const char* what);

double spectral_norm(const ComplexMatrix& m);
RealVector singular_values(const ComplexMatrix& m);

/// Number of singular values above tol.threshold(largest singular value).
std::size_t rank(const ComplexMatrix& m, const Tolerance& tol = {});

struct HermitianSpectrum {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, same order as values
};

/// Eigen-decomposition of a Hermitian matrix. Throws NotHermitian when
/// ||M - M*|| exceeds the tolerance at the scale of ||M||.
HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m, const Tolerance& tol = {});

/// Orthonormal basis of the numerical null space (may have zero columns).
ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerance& tol = {});

/// Orthonormal basis of the numerical column space.
ComplexMatrix range_basis(const ComplexMatrix& m, const Tolerance& tol = {});

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});

/// Spectral condition number; infinity for singular input.
double condition_number(const ComplexMatrix& m);

ComplexMatrix sip(std::size_t n);  // ones on the anti-diagonal
ComplexMatrix jordan_block(std::size_t n, Complex eigenvalue);

/// Block-diagonal placement of `block` into `target` at (offset, offset).
void place_block(ComplexMatrix& target, const ComplexMatrix& block, Eigen::Index offset);

}  // namespace indefsqrt
