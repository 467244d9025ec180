#pragma once

// JSON for matrices: {"field": "<field-spec>", "rows": n, "cols": n, "entries": [[...], ...]}.
// Entries are integers over F_p, coefficient arrays over extensions, "a/b"
// strings over Q, floats over R and [re, im] pairs over C.

#include <string>

#include "json.hpp"
#include "wordmap/matrix.hpp"

namespace wordmap {

nlohmann::json element_to_json(const Element& e);
Element element_from_json(const FieldPtr& f, const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& a);

/// Accepts the full object, or a bare entries array when `fallback` is given.
/// The object's own field wins unless `override_field` is set. Throws ParseError.
Matrix matrix_from_json(const nlohmann::json& j, const FieldPtr& fallback = nullptr, bool override_field = false);

/// Inline JSON when `text` starts with '{' or '[', otherwise a file path.
nlohmann::json load_json(const std::string& text);

}  // namespace wordmap
