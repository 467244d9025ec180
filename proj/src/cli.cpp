#include "wordmap/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "wordmap/commutator.hpp"
#include "wordmap/counting.hpp"
#include "wordmap/diagonal.hpp"
#include "wordmap/io.hpp"
#include "wordmap/word.hpp"

namespace wordmap::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string field;
  std::string word;
  std::string matrix;
  std::string witness;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::size_t n = 2;
  double tolerance = 0;
  std::string gamma = "1";
  std::uint64_t k1 = 2, k2 = 2;
};

FieldPtr with_tolerance(FieldPtr f, double tol) {
  if (tol <= 0 || !f->is_approx()) return f;
  return f->kind() == FieldKind::Real ? Field::real(tol) : Field::complex(tol);
}

FieldPtr field_from(const Options& o, const json* fallback_source) {
  if (!o.field.empty()) return with_tolerance(parse_field(o.field), o.tolerance);
  if (fallback_source && fallback_source->is_object() && fallback_source->contains("field")) {
    return with_tolerance(parse_field(fallback_source->at("field").get<std::string>()), o.tolerance);
  }
  fail(ErrorCode::InvalidArgument, "--field is required");
}

std::string render_text(const Matrix& a) {
  std::string s;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += "  [";
    for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? " " : "") + a(i, j).to_string();
    s += "]\n";
  }
  return s;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + o.out + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bool evaluates_to(const WordSpec& word, const std::vector<Matrix>& xs, const Matrix& target) {
  return agrees(word.evaluate(xs), target, 1e4);
}

void solve(const Options& o, std::ostream& out) {
  const json mj = load_json(o.matrix);
  const FieldPtr f = field_from(o, &mj);
  const Matrix a = matrix_from_json(mj, f, true);
  const WordSpec word = parse_word(o.word);
  std::vector<Matrix> xs, conjugators;
  std::vector<std::string> routes;
  if (word.kind == WordKind::Commutator) {
    const auto w = solve_commutator_product(a, word.m, o.seed);
    for (const auto& [x, y] : w.pairs) {
      xs.push_back(x);
      xs.push_back(y);
    }
  } else {
    auto w = solve_diagonal_word(a, word.diagonal(f), o.seed);
    xs = std::move(w.matrices);
    conjugators = std::move(w.conjugators);
    routes = std::move(w.routes);
  }
  if (!evaluates_to(word, xs, a)) fail(ErrorCode::VerificationFailed, "witness does not reproduce the target");

  if (o.format == "text") {
    std::string s = "word " + word.to_string() + " over " + f->spec() + ": verified\n";
    for (std::size_t i = 0; i < xs.size(); ++i) s += "X" + std::to_string(i + 1) + " =\n" + render_text(xs[i]);
    emit(o, out, s);
    return;
  }
  json j = {{"schema", kSchema}, {"command", "solve"}, {"field", f->spec()}, {"word", o.word}, {"seed", o.seed},
            {"target", matrix_to_json(a)}};
  j["witnesses"] = json::array();
  for (const auto& x : xs) j["witnesses"].push_back(matrix_to_json(x));
  j["verified"] = true;
  j["conjugators"] = json::array();
  for (const auto& c : conjugators) j["conjugators"].push_back(matrix_to_json(c));
  j["routes"] = routes;
  emit(o, out, dump(j));
}

void verify(const Options& o, std::ostream& out) {
  if (o.witness.empty()) fail(ErrorCode::InvalidArgument, "--witness is required");
  const json wj = load_json(o.witness);
  const FieldPtr f = field_from(o, &wj);
  const std::string word_text = !o.word.empty() ? o.word : wj.value("word", std::string());
  if (word_text.empty()) fail(ErrorCode::InvalidArgument, "--word is required");
  const WordSpec word = parse_word(word_text);
  json target_json;
  if (!o.matrix.empty()) {
    target_json = load_json(o.matrix);
  } else if (wj.contains("target")) {
    target_json = wj.at("target");
  } else {
    fail(ErrorCode::InvalidArgument, "--matrix is required");
  }
  const Matrix target = matrix_from_json(target_json, f, true);
  const json& list = wj.is_object() ? wj.at("witnesses") : wj;
  std::vector<Matrix> xs;
  for (const auto& m : list) xs.push_back(matrix_from_json(m, f, true));
  const bool ok = evaluates_to(word, xs, target);
  const double err = f->is_approx() ? max_abs_diff(word.evaluate(xs), target) : 0.0;
  if (o.format == "text") {
    emit(o, out, std::string(ok ? "verified" : "MISMATCH") + "\n");
  } else {
    json j = {{"schema", kSchema}, {"command", "verify"}, {"field", f->spec()}, {"word", word_text}, {"verified", ok}};
    if (f->is_approx()) j["max_abs_error"] = err;
    emit(o, out, dump(j));
  }
  if (!ok) fail(ErrorCode::VerificationFailed, "witness does not reproduce the target");
}

void enumerate_image(const Options& o, std::ostream& out) {
  const FieldPtr f = field_from(o, nullptr);
  const WordSpec word = parse_word(o.word);
  const ImageSummary s = image_enumerate(word, o.n, f, o.cap);
  if (o.format == "text") {
    std::string t = "image size " + std::to_string(s.size) + " of " + std::to_string(s.total) + "\n";
    for (const auto& m : s.missing) t += "missing:\n" + render_text(m);
    emit(o, out, t);
    return;
  }
  json j = {{"schema", kSchema}, {"command", "enumerate-image"}, {"field", f->spec()}, {"word", o.word},
            {"n", o.n}, {"size", s.size}, {"total", s.total}, {"surjective", s.size == s.total}};
  j["missing"] = json::array();
  for (const auto& m : s.missing) j["missing"].push_back(matrix_to_json(m));
  emit(o, out, dump(j));
}

void count(const Options& o, std::ostream& out) {
  const FieldPtr f = field_from(o, nullptr);
  const WordSpec word = parse_word(o.word);
  if (word.kind != WordKind::Diagonal) fail(ErrorCode::InvalidArgument, "count needs a diagonal word");
  std::vector<Element> delta;
  std::vector<std::uint64_t> k;
  for (const auto& t : word.diagonal(f).terms) {
    delta.push_back(t.delta);
    k.push_back(t.k);
  }
  const CountReport r = count_solutions(delta, k, parse_element(f, o.gamma), o.cap);
  if (o.format == "csv") {
    emit(o, out, csv_header() + "\n" + to_csv(r) + "\n");
  } else if (o.format == "text") {
    std::ostringstream s;
    s << "S = " << r.solutions << ", q^(m-1) = " << r.expected << ", bound = " << r.bound
      << (r.passes ? ", pass\n" : ", FAIL\n");
    emit(o, out, s.str());
  } else {
    json j = {{"schema", kSchema}, {"command", "count"}, {"q", r.q}, {"m", r.m}, {"k", r.k}, {"delta", r.delta},
              {"gamma", r.gamma}, {"S", r.solutions}, {"expected", r.expected}, {"bound", r.bound},
              {"pass", r.passes}};
    emit(o, out, dump(j));
  }
}

void threshold_cmd(const Options& o, std::ostream& out) {
  const ThresholdReport r = threshold(o.k1, o.k2);
  if (o.format == "text") {
    emit(o, out, std::to_string(r.threshold) + "\n");
    return;
  }
  json j = {{"schema", kSchema}, {"command", "threshold"}, {"k1", r.k1}, {"k2", r.k2},
            {"threshold", r.threshold}, {"note", r.note}};
  emit(o, out, dump(j));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Solve word equations on matrix algebras and verify the witnesses."};
  app.require_subcommand(1);
  auto formats = CLI::IsMember({"json", "text", "csv"});

  auto* s = app.add_subcommand("solve", "find X_1..X_m with w(X_1..X_m) = A");
  s->add_option("--field", o.field, "field spec, e.g. Fp:7, Fq:p=2,d=2,mod=[1,1,1], Q, R:tol=1e-9");
  s->add_option("--word", o.word, "comm:m=4 or diag:d=1,k=2;d=3,k=5")->required();
  s->add_option("--matrix", o.matrix, "matrix JSON, inline or a file path")->required();
  s->add_option("--seed", o.seed, "random seed");

  auto* v = app.add_subcommand("verify", "re-evaluate a witness against its target");
  v->add_option("--witness", o.witness, "witness JSON from solve, inline or a file path")->required();
  v->add_option("--field", o.field, "override the witness field");
  v->add_option("--word", o.word, "override the witness word");
  v->add_option("--matrix", o.matrix, "override the target matrix");

  auto* e = app.add_subcommand("enumerate-image", "exact image of a word on M_n(F_q)");
  e->add_option("--field", o.field, "finite field spec")->required();
  e->add_option("--word", o.word, "word spec")->required();
  e->add_option("--n", o.n, "matrix size");

  auto* c = app.add_subcommand("count", "count solutions of sum d_i x_i^k_i = gamma over F_q");
  c->add_option("--field", o.field, "finite field spec")->required();
  c->add_option("--word", o.word, "diagonal word giving d_i and k_i")->required();
  c->add_option("--gamma", o.gamma, "right-hand side");

  auto* t = app.add_subcommand("threshold", "k1^4 k2^4");
  t->add_option("--k1", o.k1)->required();
  t->add_option("--k2", o.k2)->required();

  for (auto* sub : {s, v, e, c, t}) {
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--format", o.format, "json, text or csv")->check(formats);
  }
  for (auto* sub : {s, v}) sub->add_option("--tolerance", o.tolerance, "tolerance for approximate fields");
  for (auto* sub : {e, c}) sub->add_option("--cap", o.cap, "enumeration cap");

  std::vector<std::string> argv_store{"wordmap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (s->parsed()) solve(o, out);
    else if (v->parsed()) verify(o, out);
    else if (e->parsed()) enumerate_image(o, out);
    else if (c->parsed()) count(o, out);
    else threshold_cmd(o, out);
    return 0;
  } catch (const Error& ex) {
    err << "error [" << to_string(ex.code()) << "]: " << ex.what() << "\n";
    return ex.is_negative_answer() ? 2 : 1;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace wordmap::cli
