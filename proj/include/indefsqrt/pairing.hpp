#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "indefsqrt/canonical.hpp"

namespace indefsqrt {

enum class Mode { General, Hsa, Hnn };

std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// Jordan block sizes at one eigenvalue, non-increasing.
struct SegreCharacteristic {
  std::vector<int> entries;

  std::size_t count(int size) const noexcept;
  bool operator==(const SegreCharacteristic&) const = default;
};

/// A member of a Segre pairing; (n, 0) is an unpaired block.
struct SegrePair {
  int first = 1;
  int second = 0;

  bool operator==(const SegrePair&) const = default;
};

void validate(const SegrePair& pair);

/// Pairings are identified by how many pairs of each kind they hold.
struct SegrePairing {
  std::size_t l1 = 0;  // (1,0)
  std::size_t l2 = 0;  // (1,1)
  std::size_t l3 = 0;  // (2,1)
  std::size_t l4 = 0;  // (2,2)

  /// Pairs in lexicographically descending order.
  std::vector<SegrePair> pairs() const;

  bool operator==(const SegrePairing&) const = default;
};

SegrePairing pairing_from_pairs(const std::vector<SegrePair>& pairs);

/// Throws NonZeroEigenvalue if cp0 holds a block away from zero.
SegreCharacteristic segre_characteristic(const CanonicalPair& cp0);

/// Conjugate partition of the nullity increments. Throws InvalidWeyr when the
/// nullities decrease or their increments grow.
SegreCharacteristic weyr_to_segre(const std::vector<std::size_t>& nullities);

/// Closed-form existence test for a square root of a nilpotent H-nonnegative
/// matrix. Throws UnsupportedEntry for block sizes above two.
bool has_square_root(const SegreCharacteristic& sc);

/// Every distinct pairing, sorted by (l4, l3, l2, l1) descending.
std::vector<SegrePairing> enumerate_pairings(const SegreCharacteristic& sc);

struct Verdict {
  bool ok = false;
  std::string reason;
};

/// Whether a pairing of the zero part cp0 can carry a root of the given kind.
/// Throws PairingMismatch if the pairing does not cover cp0's blocks.
Verdict admissible_for_mode(const SegrePairing& pairing, const CanonicalPair& cp0, Mode mode);

}  // namespace indefsqrt
