#include "propid/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <utility>

#include "propid/errors.hpp"

namespace propid {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

void require_same_shape(const Mat& a, const Mat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = trim(s.substr(slash + 1));
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (num.empty() || den.empty() || !all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed fraction '" + std::string(s) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  // [sign] digits [. digits] [e [sign] digits]
  std::string_view rest = s;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e + 1);
    rest = rest.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (exp_text.empty() || !all_digits(exp_text) || exp_text.size() > 6) {
      throw ParseError("malformed exponent in '" + std::string(s) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part)) {
    throw ParseError("malformed number '" + std::string(s) + "'");
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  if (digits.empty()) digits = "0";
  mpz_class num(digits, 10);
  mpz_class den = pow10(frac_part.size());
  exponent < 0 ? den *= pow10(static_cast<unsigned long>(-exponent))
               : num *= pow10(static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

// ---- Mat -------------------------------------------------------------------

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::unit(std::size_t dim, std::size_t i) {
  Mat m(dim, 1);
  m(i, 0) = 1;
  return m;
}

Mat Mat::column(std::span<const Rational> values) {
  return Mat(values.size(), 1, std::vector<Rational>(values.begin(), values.end()));
}

Mat Mat::row(std::span<const Rational> values) {
  return Mat(1, values.size(), std::vector<Rational>(values.begin(), values.end()));
}

Mat Mat::col(std::size_t c) const { return block(0, c, rows_, 1); }

Mat Mat::row_at(std::size_t r) const { return block(r, 0, 1, cols_); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  Mat out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

Mat Mat::select_cols(std::span<const std::size_t> indices) const {
  Mat out(rows_, indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= cols_) throw DimensionMismatch("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, indices[j]);
  }
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool Mat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "matrix sum");
  Mat out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_shape(a, b, "matrix difference");
  Mat out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

Mat operator-(const Mat& a) { return Rational(-1) * a; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  Mat out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& lhs = a(r, k);
      if (sgn(lhs) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += lhs * b(k, c);
    }
  }
  return out;
}

Mat operator*(const Rational& s, const Mat& a) {
  Mat out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = s * a(r, c);
  return out;
}

Mat hstack(const Mat& left, const Mat& right) {
  if (left.rows() != right.rows()) throw DimensionMismatch("hstack: row counts differ");
  Mat out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) out(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) out(r, left.cols() + c) = right(r, c);
  }
  return out;
}

Mat vstack(const Mat& top, const Mat& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionMismatch("vstack: column counts differ");
  Mat out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t c = 0; c < top.cols(); ++c) {
    for (std::size_t r = 0; r < top.rows(); ++r) out(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

Rational trace(const Mat& m) {
  if (!m.square()) throw DimensionMismatch("trace of a non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// ---- elimination -----------------------------------------------------------

std::size_t rank(const Mat& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class scale = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      a[r * cols + c] = m(r, c).get_num() * (scale / m(r, c).get_den());
    }
  }
  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };

  std::size_t rk = 0;
  mpz_class previous_pivot = 1;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t p = rk;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rk) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(rk, j));
    }
    for (std::size_t i = rk + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = at(rk, c) * at(i, j) - at(i, c) * at(rk, j);
        mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), previous_pivot.get_mpz_t());
      }
      at(i, c) = 0;
    }
    previous_pivot = at(rk, c);
    ++rk;
  }
  return rk;
}

Echelon reduced_row_echelon(const Mat& m) {
  Echelon e{m, {}};
  Mat& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    }
    const Rational pivot = a(row, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(row, j) /= pivot;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || sgn(a(i, c)) == 0) continue;
      const Rational factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    e.pivots.push_back(c);
    ++row;
  }
  return e;
}

Mat kernel(const Mat& m) {
  const Echelon e = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Mat basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, f);
  }
  return basis;
}

std::optional<Mat> solve_right(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve_right: lhs has " + std::to_string(a.rows()) +
                            " rows, rhs has " + std::to_string(b.rows()));
  }
  const Echelon e = reduced_row_echelon(hstack(a, b));
  Mat q(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) q(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  }
  return q;
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_right(m, Mat::identity(m.rows()));
}

// ---- subspaces -------------------------------------------------------------

Subspace Subspace::full(std::size_t ambient) { return Subspace(ambient, Mat::identity(ambient)); }

Subspace Subspace::zero(std::size_t ambient) { return Subspace(ambient, Mat(ambient, 0)); }

Subspace Subspace::span(const Mat& generators) {
  const Echelon e = reduced_row_echelon(generators);
  return Subspace(generators.rows(), generators.select_cols(e.pivots));
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() && contains(a, b);
}

Subspace image(const Mat& m) { return Subspace::span(m); }

bool contains(const Subspace& outer, const Subspace& inner) {
  if (outer.ambient_dim() != inner.ambient_dim()) {
    throw DimensionMismatch("subspaces live in R^" + std::to_string(outer.ambient_dim()) +
                            " and R^" + std::to_string(inner.ambient_dim()));
  }
  if (inner.dim() > outer.dim()) return false;
  return solve_right(outer.basis(), inner.basis()).has_value();
}

bool contains(const Subspace& outer, const Mat& vector) {
  return contains(outer, Subspace::span(vector));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionMismatch("intersect: ambient dimensions differ");
  }
  // (y, z) in ker[A, -B]  <=>  A y = B z lies in both subspaces.
  const Mat k = kernel(hstack(a.basis(), -b.basis()));
  return image(a.basis() * k.block(0, 0, a.dim(), k.cols()));
}

Mat missing_directions(const Subspace& have, const Subspace& need) {
  std::vector<std::size_t> missing;
  Mat grown = have.basis();
  for (std::size_t c = 0; c < need.dim(); ++c) {
    const Mat v = need.basis().col(c);
    if (contains(Subspace::span(grown), v)) continue;
    missing.push_back(c);
    grown = hstack(grown, v);
  }
  return need.basis().select_cols(missing);
}

Subspace orthogonal_complement(const Subspace& s) {
  return Subspace::span(kernel(s.basis().transpose()));
}

Mat project(const Subspace& s, const Mat& vector) {
  if (vector.rows() != s.ambient_dim() || vector.cols() != 1) {
    throw DimensionMismatch("project: expected a column vector in R^" +
                            std::to_string(s.ambient_dim()));
  }
  if (s.dim() == 0) return Mat(s.ambient_dim(), 1);
  const Mat& v = s.basis();
  const Mat vt = v.transpose();
  const auto coeffs = solve_right(vt * v, vt * vector);
  if (!coeffs) throw InternalFault("Gram matrix of a basis is singular");
  return v * *coeffs;
}

Eigen::MatrixXd to_eigen(const Mat& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_double(m(r, c));
  return out;
}

// ---- text format -----------------------------------------------------------

Mat parse_matrix(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) return Mat();
  std::vector<std::vector<Rational>> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = body.find(';', start);
    const std::string_view row_text = body.substr(start, end == std::string_view::npos
                                                             ? std::string_view::npos
                                                             : end - start);
    std::vector<Rational> row;
    std::size_t s = 0;
    while (true) {
      const std::size_t e = row_text.find(',', s);
      row.push_back(parse_rational(
          row_text.substr(s, e == std::string_view::npos ? std::string_view::npos : e - s)));
      if (e == std::string_view::npos) break;
      s = e + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("matrix rows have different lengths in '" + std::string(body) + "'");
    }
    rows.push_back(std::move(row));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  const std::size_t cols = rows.front().size();
  std::vector<Rational> data;
  data.reserve(rows.size() * cols);
  for (auto& r : rows) std::move(r.begin(), r.end(), std::back_inserter(data));
  return Mat(rows.size(), cols, std::move(data));
}

std::string format_matrix(const Mat& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r > 0) out += ';';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      out += to_string(m(r, c));
    }
  }
  return out;
}

}  // namespace propid
