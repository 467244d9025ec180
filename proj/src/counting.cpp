#include "wordmap/counting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace wordmap {

namespace {

// q^e, or nullopt past `cap`.
std::optional<std::uint64_t> capped_power(std::uint64_t q, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > cap / q) return std::nullopt;
    r *= q;
  }
  return r;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + xs[i];
  return s;
}

// {a * b} or {a + b} over two indicator sets, split across threads by the outer set.
template <class Op>
std::vector<std::uint8_t> combine(const FieldPtr& f, std::size_t n, const std::vector<std::uint8_t>& lhs,
                                  const std::vector<Matrix>& rhs, Op op) {
  const std::uint64_t total = lhs.size();
  std::vector<std::uint64_t> outer;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (lhs[i]) outer.push_back(i);
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::vector<std::vector<std::uint8_t>> partial(workers, std::vector<std::uint8_t>(total, 0));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < outer.size(); i += workers) {
        const Matrix a = matrix_at(f, n, outer[i]);
        for (const auto& b : rhs) partial[w][matrix_index(op(a, b))] = 1;
      }
    });
  }
  for (auto& t : pool) t.join();
  std::vector<std::uint8_t> out(total, 0);
  for (const auto& p : partial) {
    for (std::uint64_t i = 0; i < total; ++i) out[i] |= p[i];
  }
  return out;
}

std::vector<Matrix> members_of(const FieldPtr& f, std::size_t n, const std::vector<std::uint8_t>& set) {
  std::vector<Matrix> out;
  for (std::uint64_t i = 0; i < set.size(); ++i) {
    if (set[i]) out.push_back(matrix_at(f, n, i));
  }
  return out;
}

}  // namespace

double lang_weil_bound(std::uint64_t q, const std::vector<std::uint64_t>& k) {
  double prod = 1;
  for (auto v : k) prod *= static_cast<double>(v);
  const double m = static_cast<double>(k.size());
  const double qd = static_cast<double>(q);
  return prod * std::pow(qd, (m - 1) / 2) * std::pow(1 - 1 / qd, -m / 2);
}

CountReport count_solutions(const std::vector<Element>& delta, const std::vector<std::uint64_t>& k,
                            const Element& gamma, std::uint64_t cap) {
  if (delta.empty() || delta.size() != k.size()) fail(ErrorCode::InvalidArgument, "one coefficient per exponent");
  const FieldPtr& f = gamma.field();
  if (!f->is_finite()) fail(ErrorCode::InfiniteField, "counting needs a finite field");
  for (const auto& d : delta) {
    require_same_field(f, d.field());
    if (d.is_zero()) fail(ErrorCode::InvalidArgument, "coefficients must be nonzero");
  }
  const std::uint64_t q = *f->cardinality();
  const std::size_t m = delta.size();
  if (!capped_power(q, m, cap)) fail(ErrorCode::TooLarge, "q^m exceeds the enumeration cap");

  // Value histograms of delta_i x^{k_i}, combined by additive convolution.
  std::vector<std::uint64_t> acc(q, 0);
  acc[index_of(zero(f))] = 1;
  std::vector<Element> elems;
  elems.reserve(q);
  for (const Element e : enumerate(f)) elems.push_back(e);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::uint64_t> h(q, 0);
    for (const auto& x : elems) ++h[index_of(delta[i] * pow(x, k[i]))];
    std::vector<std::uint64_t> next(q, 0);
    for (std::uint64_t a = 0; a < q; ++a) {
      if (!acc[a]) continue;
      for (std::uint64_t b = 0; b < q; ++b) {
        if (h[b]) next[index_of(elems[a] + elems[b])] += acc[a] * h[b];
      }
    }
    acc = std::move(next);
  }
  CountReport r;
  r.q = q;
  r.m = m;
  r.k = k;
  for (const auto& d : delta) r.delta.push_back(d.to_string());
  r.gamma = gamma.to_string();
  r.solutions = acc[index_of(gamma)];
  r.expected = std::pow(static_cast<double>(q), static_cast<double>(m) - 1);
  r.bound = lang_weil_bound(q, k);
  r.passes = std::abs(static_cast<double>(r.solutions) - r.expected) <= r.bound + 1e-9;
  return r;
}

std::string csv_header() { return "q,m,k_list,delta_list,gamma,S,expected,bound,pass"; }

std::string to_csv(const CountReport& r) {
  std::vector<std::string> ks;
  for (auto v : r.k) ks.push_back(std::to_string(v));
  std::ostringstream os;
  os.precision(17);
  os << r.q << ',' << r.m << ',' << join(ks) << ',' << join(r.delta) << ',' << r.gamma << ',' << r.solutions << ','
     << r.expected << ',' << r.bound << ',' << (r.passes ? "true" : "false");
  return os.str();
}

ThresholdReport threshold(std::uint64_t k1, std::uint64_t k2) {
  if (k1 == 0 || k2 == 0) fail(ErrorCode::InvalidArgument, "exponents must be positive");
  const long double t = std::pow(static_cast<long double>(k1) * static_cast<long double>(k2), 4.0L);
  if (t > 1.8e19L) fail(ErrorCode::TooLarge, "threshold overflows 64 bits");
  std::uint64_t v = 1;
  for (int i = 0; i < 4; ++i) v *= k1 * k2;
  return {k1, k2, v,
          "two solutions with distinct powers exist for q > k1^4 k2^4; the constant for the whole matrix "
          "algebra is an existence constant, certified per q by direct search"};
}

std::uint64_t matrix_index(const Matrix& a) {
  const FieldPtr& f = a.field();
  const std::uint64_t q = *f->cardinality();
  std::uint64_t idx = 0;
  for (std::size_t i = a.rows() * a.cols(); i-- > 0;) idx = idx * q + index_of(a(i / a.cols(), i % a.cols()));
  return idx;
}

Matrix matrix_at(const FieldPtr& f, std::size_t n, std::uint64_t index) {
  const std::uint64_t q = *f->cardinality();
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n * n; ++i) {
    m(i / n, i % n) = element_at(f, index % q);
    index /= q;
  }
  return m;
}

ImageSummary image_enumerate(const WordSpec& word, std::size_t n, const FieldPtr& f, std::uint64_t cap) {
  if (!f->is_finite()) fail(ErrorCode::InfiniteField, "image enumeration needs a finite field");
  if (n == 0) fail(ErrorCode::InvalidArgument, "n must be positive");
  const std::uint64_t q = *f->cardinality();
  const auto total = capped_power(q, n * n, cap);
  if (!total || !capped_power(q, n * n * word.arity(), cap)) {
    fail(ErrorCode::TooLarge, "q^(n^2 m) exceeds the enumeration cap");
  }
  // The variables of different factors are independent, so the image is the
  // product (commutator words) or sum (diagonal words) of the factor images.
  std::vector<Matrix> all;
  for (std::uint64_t i = 0; i < *total; ++i) all.push_back(matrix_at(f, n, i));
  std::vector<std::uint8_t> image;
  if (word.kind == WordKind::Commutator) {
    std::vector<std::uint8_t> everything(*total, 1);
    const auto comm = combine(f, n, everything, all, [](const Matrix& x, const Matrix& y) { return commutator(x, y); });
    const auto cs = members_of(f, n, comm);
    image = comm;
    for (std::size_t j = 2; j < word.m; j += 2) {
      image = combine(f, n, image, cs, [](const Matrix& x, const Matrix& y) { return x * y; });
    }
  } else {
    const DiagonalWordSpec d = word.diagonal(f);
    std::vector<std::vector<Matrix>> terms;
    for (const auto& t : d.terms) {
      std::vector<std::uint8_t> s(*total, 0);
      for (const auto& x : all) s[matrix_index(t.delta * pow(x, t.k))] = 1;
      terms.push_back(members_of(f, n, s));
      if (terms.size() == 1) image = s;
    }
    for (std::size_t j = 1; j < terms.size(); ++j) {
      image = combine(f, n, image, terms[j], [](const Matrix& x, const Matrix& y) { return x + y; });
    }
  }
  ImageSummary out;
  out.total = *total;
  for (std::uint64_t i = 0; i < *total; ++i) {
    if (image[i]) {
      ++out.size;
    } else if (out.missing.size() < 10) {
      out.missing.push_back(matrix_at(f, n, i));
    }
  }
  out.members = std::move(image);
  return out;
}

}  // namespace wordmap
