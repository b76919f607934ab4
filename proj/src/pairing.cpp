#include "indefsqrt/pairing.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

void require_small_entries(const SegreCharacteristic& sc) {
  for (int e : sc.entries) {
    if (e < 1) throw Error(ErrorCode::InvalidArgument, "Segre entries must be positive");
    if (e > 2) throw Error(ErrorCode::UnsupportedEntry, "Segre entry " + std::to_string(e) + " exceeds 2");
  }
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::General: return "general";
    case Mode::Hsa: return "hsa";
    case Mode::Hnn: return "hnn";
  }
  return "general";
}

Mode parse_mode(std::string_view text) {
  if (text == "general") return Mode::General;
  if (text == "hsa") return Mode::Hsa;
  if (text == "hnn") return Mode::Hnn;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(text) + "'");
}

std::size_t SegreCharacteristic::count(int size) const noexcept {
  return static_cast<std::size_t>(std::count(entries.begin(), entries.end(), size));
}

void validate(const SegrePair& pair) {
  if (pair.second < 0 || pair.first < pair.second || pair.first - pair.second > 1 || pair.first == 0) {
    throw Error(ErrorCode::InvalidArgument, "(" + std::to_string(pair.first) + "," +
                                                std::to_string(pair.second) + ") is not a Segre pair");
  }
}

std::vector<SegrePair> SegrePairing::pairs() const {
  std::vector<SegrePair> out;
  out.insert(out.end(), l4, SegrePair{2, 2});
  out.insert(out.end(), l3, SegrePair{2, 1});
  out.insert(out.end(), l2, SegrePair{1, 1});
  out.insert(out.end(), l1, SegrePair{1, 0});
  return out;
}

SegrePairing pairing_from_pairs(const std::vector<SegrePair>& pairs) {
  SegrePairing out;
  for (const auto& p : pairs) {
    validate(p);
    if (p == SegrePair{1, 0}) ++out.l1;
    else if (p == SegrePair{1, 1}) ++out.l2;
    else if (p == SegrePair{2, 1}) ++out.l3;
    else if (p == SegrePair{2, 2}) ++out.l4;
    else throw Error(ErrorCode::UnsupportedEntry, "pairs beyond (2,2) are outside the supported class");
  }
  return out;
}

SegreCharacteristic segre_characteristic(const CanonicalPair& cp0) {
  SegreCharacteristic sc;
  for (const auto& b : cp0.blocks()) {
    if (b.eigenvalue != 0.0) {
      throw Error(ErrorCode::NonZeroEigenvalue, "Segre characteristic requested on a nonzero block");
    }
    sc.entries.push_back(b.size);
  }
  std::sort(sc.entries.begin(), sc.entries.end(), std::greater<>());
  return sc;
}

SegreCharacteristic weyr_to_segre(const std::vector<std::size_t>& nullities) {
  std::vector<std::size_t> increments;
  std::size_t prev = 0;
  for (std::size_t v : nullities) {
    if (v < prev) throw Error(ErrorCode::InvalidWeyr, "nullities must be non-decreasing");
    const std::size_t d = v - prev;
    if (!increments.empty() && d > increments.back()) {
      throw Error(ErrorCode::InvalidWeyr, "nullity increments must be non-increasing");
    }
    increments.push_back(d);
    prev = v;
  }
  SegreCharacteristic sc;
  const std::size_t blocks = increments.empty() ? 0 : increments.front();
  for (std::size_t j = 1; j <= blocks; ++j) {
    const auto size = std::count_if(increments.begin(), increments.end(), [j](std::size_t d) { return d >= j; });
    sc.entries.push_back(static_cast<int>(size));
  }
  return sc;
}

bool has_square_root(const SegreCharacteristic& sc) {
  require_small_entries(sc);
  const std::size_t twos = sc.count(2);
  return twos % 2 == 0 || sc.count(1) >= 1;
}

std::vector<SegrePairing> enumerate_pairings(const SegreCharacteristic& sc) {
  require_small_entries(sc);
  const std::size_t twos = sc.count(2);
  const std::size_t ones = sc.count(1);
  std::vector<SegrePairing> out;
  // 2*l4 + l3 = #2s and l1 + 2*l2 + l3 = #1s.
  for (std::size_t l4 = 0; 2 * l4 <= twos; ++l4) {
    const std::size_t l3 = twos - 2 * l4;
    if (l3 > ones) continue;
    const std::size_t free_ones = ones - l3;
    for (std::size_t l2 = 0; 2 * l2 <= free_ones; ++l2) {
      out.push_back({free_ones - 2 * l2, l2, l3, l4});
    }
  }
  std::sort(out.begin(), out.end(), [](const SegrePairing& a, const SegrePairing& b) {
    return std::tie(a.l4, a.l3, a.l2, a.l1) > std::tie(b.l4, b.l3, b.l2, b.l1);
  });
  return out;
}

Verdict admissible_for_mode(const SegrePairing& pairing, const CanonicalPair& cp0, Mode mode) {
  const SegreCharacteristic sc = segre_characteristic(cp0);
  const std::size_t twos = sc.count(2);
  const std::size_t ones = sc.count(1);
  if (2 * pairing.l4 + pairing.l3 != twos || pairing.l1 + 2 * pairing.l2 + pairing.l3 != ones) {
    throw Error(ErrorCode::PairingMismatch, "pairing does not cover the zero blocks");
  }
  if (mode == Mode::General) return {true, "every Segre pairing carries a square root"};

  if (pairing.l4 > 0) return {false, "(2,2) needs opposite signs, impossible"};
  if (mode == Mode::Hnn && pairing.l3 > 0) {
    return {false, "(2,1) yields J3(0), which is never H-nonnegative (t=0 violated)"};
  }
  // Each (2,1) consumes a +1 single; each (1,1) one +1 and one -1 single.
  const std::size_t plus = cp0.s_plus();
  const std::size_t minus = cp0.s_minus();
  if (plus < pairing.l3 + pairing.l2) {
    if (pairing.l3 > plus) return {false, "s+ >= t violated: not enough +1 singles for the (2,1) pairs"};
    return {false, "not enough +1 singles for the (1,1) pairs"};
  }
  if (minus < pairing.l2) return {false, "no -1 single left for a (1,1) pair"};
  return {true, "sign assignment exists"};
}

}  // namespace indefsqrt
