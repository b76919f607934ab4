#include "indefsqrt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

// Assumed bound on the eigenvector conditioning when sizing cluster radii.
constexpr double kConditioningGuess = 1e4;

double cluster_radius(double norm, std::size_t block_bound, const Tolerance& tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 10.0 * tol.rel * norm;
  if (block_bound == 0) return floor;
  return std::max(floor, 2.0 * norm * std::pow(kConditioningGuess * eps, 1.0 / static_cast<double>(block_bound)));
}

std::vector<std::vector<std::size_t>> union_clusters(const std::vector<Complex>& ev,
                                                     const std::vector<std::size_t>& members, double radius) {
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (std::abs(ev[members[i]] - ev[members[j]]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> groups(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) groups[find(i)].push_back(members[i]);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

struct ClusterContext {
  const ComplexMatrix& M;
  const std::vector<Complex>& ev;
  const Tolerance& tol;
  double norm;
  JordanData& out;
};

// Coarsest clustering first; clusters whose measured multiplicity disagrees
// with their size are re-split at the next smaller radius.
void resolve(ClusterContext& ctx, const std::vector<std::size_t>& members, std::size_t block_bound) {
  const double radius = cluster_radius(ctx.norm, block_bound, ctx.tol);
  for (const auto& group : union_clusters(ctx.ev, members, radius)) {
    Complex centroid = 0.0;
    for (std::size_t i : group) centroid += ctx.ev[i];
    centroid /= static_cast<double>(group.size());
    const auto weyr = weyr_sequence(ctx.M, centroid, ctx.tol);
    if (!weyr.empty() && weyr.back() == group.size()) {
      for (int size : weyr_to_segre(weyr).entries) ctx.out.blocks.push_back({centroid, size});
      continue;
    }
    if (block_bound == 0) {
      throw Error(ErrorCode::ClusterAmbiguity, "eigenvalue cluster near (" + std::to_string(centroid.real()) + "," +
                                                   std::to_string(centroid.imag()) + ") cannot be resolved");
    }
    resolve(ctx, group, std::min(block_bound, group.size()) - 1);
  }
}

bool pair_search(std::vector<int>& entries, std::vector<bool>& used) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) return true;
  const auto i = static_cast<std::size_t>(first - used.begin());
  used[i] = true;
  // Partner zero: only (1,0) is a legal pair.
  if (entries[i] == 1 && pair_search(entries, used)) return true;
  for (std::size_t j = i + 1; j < entries.size(); ++j) {
    if (used[j] || std::abs(entries[i] - entries[j]) > 1) continue;
    used[j] = true;
    if (pair_search(entries, used)) return true;
    used[j] = false;
  }
  used[i] = false;
  return false;
}

}  // namespace

SquareCheck check_square(const ComplexMatrix& A, const ComplexMatrix& B, const Tolerance& tol) {
  require_square(A, "A");
  require_square(B, "B");
  if (A.rows() != B.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  const double norm_a = spectral_norm(A);
  SquareCheck out;
  out.residual = spectral_norm(A * A - B);
  out.threshold = tol.threshold(1.0 + norm_a * norm_a);
  out.ok = out.residual <= out.threshold;
  return out;
}

std::vector<std::size_t> weyr_sequence(const ComplexMatrix& M, Complex lambda, const Tolerance& tol) {
  require_square(M, "M");
  const Eigen::Index n = M.rows();
  const ComplexMatrix shifted = M - lambda * ComplexMatrix::Identity(n, n);
  // ker (M - lambda)^k = { x : (M - lambda) x in ker (M - lambda)^{k-1} }.
  std::vector<std::size_t> out;
  ComplexMatrix kernel(n, 0);
  while (static_cast<Eigen::Index>(kernel.cols()) < n) {
    const ComplexMatrix projector = ComplexMatrix::Identity(n, n) - kernel * kernel.adjoint();
    const ComplexMatrix next = kernel_basis(projector * shifted, tol);
    if (next.cols() <= kernel.cols()) break;
    kernel = next;
    out.push_back(static_cast<std::size_t>(kernel.cols()));
  }
  return out;
}

std::size_t JordanData::dimension() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.size);
  return n;
}

JordanData jordan_structure(const ComplexMatrix& M, const Tolerance& tol) {
  require_square(M, "M");
  require_finite(M, "M");
  const auto n = static_cast<std::size_t>(M.rows());
  JordanData out;
  if (n == 0) return out;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(M, false);
  const auto& values = solver.eigenvalues();
  std::vector<Complex> ev(values.data(), values.data() + values.size());
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  ClusterContext ctx{M, ev, tol, std::max(spectral_norm(M), 1.0), out};
  resolve(ctx, all, n);
  if (out.dimension() != n) throw Error(ErrorCode::ClusterAmbiguity, "Jordan blocks do not add up to the dimension");
  std::sort(out.blocks.begin(), out.blocks.end(), [](const JordanEntry& a, const JordanEntry& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
    if (a.eigenvalue.imag() != b.eigenvalue.imag()) return a.eigenvalue.imag() < b.eigenvalue.imag();
    return a.size > b.size;
  });
  return out;
}

bool same_jordan(const JordanData& a, const JordanData& b, double eig_tol) {
  if (a.blocks.size() != b.blocks.size()) return false;
  std::vector<bool> taken(b.blocks.size(), false);
  for (const auto& x : a.blocks) {
    bool matched = false;
    for (std::size_t j = 0; j < b.blocks.size() && !matched; ++j) {
      if (taken[j] || b.blocks[j].size != x.size) continue;
      if (std::abs(b.blocks[j].eigenvalue - x.eigenvalue) <= eig_tol) taken[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

bool brute_force_pairing_exists(const SegreCharacteristic& sc) {
  if (sc.entries.size() > 14) throw Error(ErrorCode::TooLarge, "brute force limited to 14 entries");
  for (int e : sc.entries) {
    if (e < 1 || e > 2) throw Error(ErrorCode::UnsupportedEntry, "brute force handles entries 1 and 2 only");
  }
  std::vector<int> entries = sc.entries;
  std::vector<bool> used(entries.size(), false);
  return pair_search(entries, used);
}

}  // namespace indefsqrt
