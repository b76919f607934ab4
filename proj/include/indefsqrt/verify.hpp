#pragma once

#include <cstddef>
#include <vector>

#include "indefsqrt/linalg.hpp"
#include "indefsqrt/pairing.hpp"

namespace indefsqrt {

struct SquareCheck {
  bool ok = false;
  double residual = 0.0;   // ||A^2 - B||
  double threshold = 0.0;  // max(abs, rel * (1 + ||A||^2))
};

SquareCheck check_square(const ComplexMatrix& A, const ComplexMatrix& B, const Tolerance& tol = {});

/// dim ker (M - lambda I)^k for k = 1, 2, ... until the nullity stops growing.
/// Empty when lambda is not an eigenvalue.
std::vector<std::size_t> weyr_sequence(const ComplexMatrix& M, Complex lambda, const Tolerance& tol = {});

struct JordanEntry {
  Complex eigenvalue;
  int size = 1;
};

/// Jordan blocks with multiplicity, sorted by eigenvalue (real part, then
/// imaginary part) and then by descending size.
struct JordanData {
  std::vector<JordanEntry> blocks;

  std::size_t dimension() const noexcept;
};

/// Rank-based Jordan structure. Eigenvalue estimates only seed clusters; each
/// cluster is accepted once the algebraic multiplicity measured at its
/// centroid matches its size. Throws ClusterAmbiguity otherwise.
JordanData jordan_structure(const ComplexMatrix& M, const Tolerance& tol = {});

/// Multiset equality with eigenvalues matched within `eig_tol` absolute.
bool same_jordan(const JordanData& a, const JordanData& b, double eig_tol);

/// Exhaustive search for a Segre pairing. Test oracle only; throws TooLarge
/// above 14 entries.
bool brute_force_pairing_exists(const SegreCharacteristic& sc);

}  // namespace indefsqrt
