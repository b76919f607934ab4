#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "indefsqrt/error.hpp"
#include "indefsqrt/json_io.hpp"
#include "indefsqrt/pairing.hpp"
#include "indefsqrt/stability.hpp"

namespace indefsqrt::cli {

// Process exit statuses; part of the public interface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidPair = 2;
inline constexpr int kExitParseError = 3;
inline constexpr int kExitNoRoot = 4;

int exit_code_for(ErrorCode code) noexcept;

struct Options {
  Mode mode = Mode::General;
  std::optional<std::size_t> pairing;  // index into the mode's admissible pairings
  std::uint64_t seed = 0;
  bool probe = false;
  double radius = 1e-3;
  std::size_t samples = 20;
};

struct Result {
  int exit_code = kExitOk;
  Json report;
};

Result analyze(const Problem& problem);
Result sqrt(const Problem& problem, const Options& options);
Result pairings(const Problem& problem);
Result stability(const Problem& problem, const Options& options);
/// Checks problem.A as a square root of problem.B.
Result verify(const Problem& problem);
Json witness(WitnessKind kind, double a);

/// Report for a failure before or during a command.
Result failure(const std::string& command, const Error& error);

std::string render_text(const Json& report);

}  // namespace indefsqrt::cli
