#include "wordmap/word.hpp"

#include <cctype>

namespace wordmap {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::uint64_t parse_positive(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorCode::ParseError, what + " must be a positive integer, got '" + text + "'");
  }
  std::uint64_t v = 0;
  try {
    v = std::stoull(text);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, what + " is out of range: '" + text + "'");
  }
  if (v == 0) fail(ErrorCode::ParseError, what + " must be positive");
  return v;
}

}  // namespace

DiagonalWordSpec WordSpec::diagonal(const FieldPtr& f) const {
  if (kind != WordKind::Diagonal) fail(ErrorCode::InvalidArgument, "not a diagonal word");
  DiagonalWordSpec d;
  for (const auto& t : terms) d.terms.push_back({parse_element(f, t.delta), t.k});
  return d;
}

Matrix WordSpec::evaluate(const std::vector<Matrix>& xs) const {
  if (xs.size() != arity() || xs.empty()) fail(ErrorCode::InvalidArgument, "witness arity does not match the word");
  if (kind == WordKind::Diagonal) return diagonal(xs[0].field()).evaluate(xs);
  Matrix r = commutator(xs[0], xs[1]);
  for (std::size_t i = 2; i + 1 < xs.size(); i += 2) r = r * commutator(xs[i], xs[i + 1]);
  return r;
}

std::string WordSpec::to_string() const {
  if (kind == WordKind::Commutator) return "comm:m=" + std::to_string(m);
  std::string s = "diag:";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += ";";
    s += "d=" + terms[i].delta + ",k=" + std::to_string(terms[i].k);
  }
  return s;
}

WordSpec parse_word(const std::string& text_in) {
  const std::string text = trim(text_in);
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "word spec needs 'comm:' or 'diag:' prefix: '" + text + "'");
  const std::string head = trim(text.substr(0, colon)), body = trim(text.substr(colon + 1));
  WordSpec w;
  if (head == "comm") {
    w.kind = WordKind::Commutator;
    const auto eq = body.find('=');
    if (eq == std::string::npos || trim(body.substr(0, eq)) != "m") fail(ErrorCode::ParseError, "expected comm:m=<even>");
    w.m = parse_positive(trim(body.substr(eq + 1)), "m");
    if (w.m % 2 != 0) fail(ErrorCode::ParseError, "commutator word length must be even");
    return w;
  }
  if (head != "diag") fail(ErrorCode::ParseError, "unknown word kind '" + head + "'");
  w.kind = WordKind::Diagonal;
  for (const auto& term : split(body, ';')) {
    WordTerm t;
    bool have_d = false, have_k = false;
    for (const auto& kv : split(term, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail(ErrorCode::ParseError, "expected key=value in '" + term + "'");
      const std::string key = trim(kv.substr(0, eq)), val = trim(kv.substr(eq + 1));
      if (key == "d" && !have_d) {
        if (val.empty()) fail(ErrorCode::ParseError, "empty coefficient");
        t.delta = val;
        have_d = true;
      } else if (key == "k" && !have_k) {
        t.k = parse_positive(val, "k");
        have_k = true;
      } else {
        fail(ErrorCode::ParseError, "unexpected key '" + key + "' in '" + term + "'");
      }
    }
    if (!have_d || !have_k) fail(ErrorCode::ParseError, "each term needs d= and k=: '" + term + "'");
    w.terms.push_back(std::move(t));
  }
  if (w.terms.empty()) fail(ErrorCode::ParseError, "diagonal word has no terms");
  return w;
}

}  // namespace wordmap
