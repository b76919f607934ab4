#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "indefsqrt/canonical.hpp"
#include "indefsqrt/linalg.hpp"

namespace indefsqrt {

using Json = nlohmann::json;

/// n x n array of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);

/// Throws ParseError on ragged rows, malformed entries or non-finite values.
ComplexMatrix matrix_from_json(const Json& j, const std::string& name);

Json complex_to_json(Complex z);
Json tolerance_to_json(const Tolerance& tol);

/// Input document: "B", "H", optional "tolerance", and optionally a candidate
/// root "A" (used by the verify command).
struct Problem {
  ComplexMatrix B;
  ComplexMatrix H;
  Tolerance tol;
  std::optional<ComplexMatrix> A;
};

/// Structural checks only (square, equal sizes, finite); whether H is
/// Hermitian is left to the analysis so it maps to the invalid-pair status.
Problem parse_problem(const Json& j);
Problem parse_problem_text(const std::string& text);

Json problem_to_json(const MatrixPair& pair);

}  // namespace indefsqrt
