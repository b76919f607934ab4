#include "indefsqrt/json_io.hpp"

#include <cmath>

#include "indefsqrt/error.hpp"

namespace indefsqrt {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error(where + " must be [re, im]");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) parse_error(where + " is not finite");
  return z;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) parse_error(name + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) parse_error(name + " rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_error(name + " has ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  name + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json tolerance_to_json(const Tolerance& tol) { return {{"rel", tol.rel}, {"abs", tol.abs}}; }

Problem parse_problem(const Json& j) {
  if (!j.is_object()) parse_error("problem file must be a JSON object");
  if (!j.contains("B") || !j.contains("H")) parse_error("problem file needs keys \"B\" and \"H\"");
  Problem p;
  p.B = matrix_from_json(j.at("B"), "B");
  p.H = matrix_from_json(j.at("H"), "H");
  if (p.B.rows() != p.B.cols()) parse_error("B is not square");
  if (p.H.rows() != p.H.cols()) parse_error("H is not square");
  if (p.B.rows() != p.H.rows()) parse_error("B and H differ in size");
  if (j.contains("tolerance")) {
    const Json& t = j.at("tolerance");
    if (!t.is_object()) parse_error("tolerance must be an object");
    if (t.contains("rel")) {
      if (!t.at("rel").is_number()) parse_error("tolerance.rel must be a number");
      p.tol.rel = t.at("rel").get<double>();
    }
    if (t.contains("abs")) {
      if (!t.at("abs").is_number()) parse_error("tolerance.abs must be a number");
      p.tol.abs = t.at("abs").get<double>();
    }
    if (!(p.tol.rel >= 0.0) || !(p.tol.abs >= 0.0)) parse_error("tolerance components must be nonnegative");
  }
  if (j.contains("A")) {
    p.A = matrix_from_json(j.at("A"), "A");
    if (p.A->rows() != p.B.rows() || p.A->cols() != p.B.cols()) parse_error("A and B differ in size");
  }
  return p;
}

Problem parse_problem_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_problem(j);
}

Json problem_to_json(const MatrixPair& pair) { return {{"B", matrix_to_json(pair.B)}, {"H", matrix_to_json(pair.H)}}; }

}  // namespace indefsqrt
