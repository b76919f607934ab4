#pragma once

#include <initializer_list>
#include <random>
#include <tuple>
#include <vector>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/linalg.hpp"

namespace testing {

using indefsqrt::CanonicalBlock;
using indefsqrt::CanonicalPair;
using indefsqrt::Complex;
using indefsqrt::ComplexMatrix;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.begin()->size());
  ComplexMatrix out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline CanonicalPair cp(std::initializer_list<std::tuple<double, int, int>> blocks) {
  std::vector<CanonicalBlock> out;
  for (const auto& [l, s, e] : blocks) out.push_back({l, s, e});
  return CanonicalPair(out);
}

// Zero-part pair with the given numbers of +1 singles, -1 singles and doubles.
inline CanonicalPair zero_cp(int plus, int minus, int doubles) {
  std::vector<CanonicalBlock> out;
  for (int i = 0; i < plus; ++i) out.push_back({0.0, 1, 1});
  for (int i = 0; i < minus; ++i) out.push_back({0.0, 1, -1});
  for (int i = 0; i < doubles; ++i) out.push_back({0.0, 2, 1});
  return CanonicalPair(out);
}

// Every zero-eigenvalue configuration of dimension 1..max_dim.
inline std::vector<CanonicalPair> all_zero_cps(int max_dim) {
  std::vector<CanonicalPair> out;
  for (int t = 0; 2 * t <= max_dim; ++t)
    for (int p = 0; 2 * t + p <= max_dim; ++p)
      for (int m = 0; 2 * t + p + m <= max_dim; ++m)
        if (t + p + m > 0) out.push_back(zero_cp(p, m, t));
  return out;
}

// Random valid pair; nonzero eigenvalues have magnitude 10^U(-1,1).
inline CanonicalPair random_cp(std::mt19937_64& rng, int max_dim) {
  std::uniform_int_distribution<int> dim_dist(1, max_dim);
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_real_distribution<double> expo(-1.0, 1.0);
  const int dim = dim_dist(rng);
  std::vector<CanonicalBlock> blocks;
  int used = 0;
  while (used < dim) {
    const int k = kind(rng);
    if (k == 4 && used + 2 <= dim) {
      blocks.push_back({0.0, 2, 1});
      used += 2;
      continue;
    }
    const double mag = std::pow(10.0, expo(rng));
    switch (k) {
      case 0: blocks.push_back({mag, 1, 1}); break;
      case 1: blocks.push_back({-mag, 1, -1}); break;
      case 2: blocks.push_back({0.0, 1, 1}); break;
      default: blocks.push_back({0.0, 1, -1}); break;
    }
    ++used;
  }
  return CanonicalPair(blocks);
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n, Eigen::Index m) {
  std::normal_distribution<double> g;
  ComplexMatrix z(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) z(i, j) = {g(rng), g(rng)};
  return z;
}

}  // namespace testing
