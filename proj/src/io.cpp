#include "wordmap/io.hpp"

#include <fstream>
#include <sstream>

namespace wordmap {

using nlohmann::json;

json element_to_json(const Element& e) {
  switch (e.field()->kind()) {
    case FieldKind::Prime: return e.residue();
    case FieldKind::Extension: {
      json arr = json::array();
      for (const auto& c : e.coeffs()) arr.push_back(element_to_json(c));
      return arr;
    }
    case FieldKind::Rationals: return e.rational().get_str();
    case FieldKind::Real: return e.real();
    case FieldKind::Complex: return json::array({e.complex().real(), e.complex().imag()});
  }
  fail(ErrorCode::InvalidArgument, "unknown field kind");
}

Element element_from_json(const FieldPtr& f, const json& j) {
  if (j.is_string()) return parse_element(f, j.get<std::string>());
  if (j.is_number_integer() || j.is_number_float() || j.is_array()) return parse_element(f, j.dump());
  fail(ErrorCode::ParseError, "unsupported entry " + j.dump());
}

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(element_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"field", a.field()->spec()}, {"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& j, const FieldPtr& fallback, bool override_field) {
  FieldPtr f = fallback;
  const json* entries = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) fail(ErrorCode::ParseError, "matrix object needs \"entries\"");
    entries = &j.at("entries");
    if (j.contains("field") && !(override_field && fallback)) f = parse_field(j.at("field").get<std::string>());
  }
  if (!f) fail(ErrorCode::ParseError, "matrix has no field");
  if (!entries->is_array() || entries->empty()) fail(ErrorCode::ParseError, "entries must be a nonempty array of rows");
  std::vector<Vec> rows;
  for (const auto& r : *entries) {
    if (!r.is_array()) fail(ErrorCode::ParseError, "each row must be an array");
    Vec row;
    for (const auto& x : r) row.push_back(element_from_json(f, x));
    rows.push_back(std::move(row));
  }
  Matrix m(f, rows);
  if (j.is_object()) {
    if (j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows()) fail(ErrorCode::ParseError, "row count mismatch");
    if (j.contains("cols") && j.at("cols").get<std::size_t>() != m.cols()) fail(ErrorCode::ParseError, "column count mismatch");
  }
  return m;
}

json load_json(const std::string& text) {
  try {
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) return json::parse(text);
    std::ifstream in(text);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace wordmap
