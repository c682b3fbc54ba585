#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include <Eigen/Core>

namespace propid {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// num/den in lowest terms; mpq_class(num, den) alone is not canonical.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses `p/q`, an integer, or a decimal such as `-0.25` (read exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

/// Dense row-major matrix of rationals. Zero-sized dimensions are allowed so
/// that empty bases and k = 0 blocks compose without special cases.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  Mat(std::initializer_list<std::initializer_list<Rational>> rows);

  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  static Mat identity(std::size_t n);
  /// Column vector e_i of length `dim` (0-based i).
  static Mat unit(std::size_t dim, std::size_t i);
  static Mat column(std::span<const Rational> values);
  static Mat row(std::span<const Rational> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  Mat col(std::size_t c) const;
  Mat row_at(std::size_t r) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Mat select_cols(std::span<const std::size_t> indices) const;
  Mat transpose() const;
  bool is_zero() const;

  /// Entries of a row or column vector, in order.
  std::vector<Rational> values() const { return data_; }

  friend bool operator==(const Mat& a, const Mat& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(const Rational& s, const Mat& a);

Mat hstack(const Mat& left, const Mat& right);
Mat vstack(const Mat& top, const Mat& bottom);
Rational trace(const Mat& m);

/// Exact rank by fraction-free (Bareiss) elimination on an integer-scaled
/// copy, taking the leftmost available pivot in each column.
std::size_t rank(const Mat& m);

struct Echelon {
  Mat reduced;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row, ascending
};
Echelon reduced_row_echelon(const Mat& m);

/// Basis of the null space, one column per free variable (ascending).
Mat kernel(const Mat& m);

/// Some exact Q with a * Q = b: pivot variables from the reduced echelon
/// form, free variables zero. nullopt when a column of b is outside im(a).
std::optional<Mat> solve_right(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& m);

/// Linear subspace of R^ambient held as a matrix of independent columns.
class Subspace {
 public:
  static Subspace full(std::size_t ambient);
  static Subspace zero(std::size_t ambient);
  /// Span of the columns of `generators` (same as image()).
  static Subspace span(const Mat& generators);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Mat& basis() const { return basis_; }

  /// Equality of subspaces (mutual containment), not of bases.
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient, Mat basis)
      : ambient_(ambient), basis_(std::move(basis)) {}
  std::size_t ambient_ = 0;
  Mat basis_;
};

/// Column space of m; basis = the leftmost pivot columns of m.
Subspace image(const Mat& m);
bool contains(const Subspace& outer, const Subspace& inner);
bool contains(const Subspace& outer, const Mat& vector);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Basis columns of `need` that, added greedily to `have`, complete it to
/// contain `need`: as many as dim(need) exceeds the dimension of their intersection.
Mat missing_directions(const Subspace& have, const Subspace& need);
/// Orthogonal complement with respect to the standard inner product.
Subspace orthogonal_complement(const Subspace& s);
/// Exact orthogonal projection of a column vector onto s.
Mat project(const Subspace& s, const Mat& vector);

// ---- floating bridge -------------------------------------------------------

/// Eigenvalues at or beyond this distance from the unit circle's inside count
/// as "on or outside"; results within it of the boundary are marginal.
inline constexpr double kUnitCircleTolerance = 1e-9;

Eigen::MatrixXd to_eigen(const Mat& m);

/// Coefficients c_0..c_n (ascending powers, monic) of det(lambda I - a).
std::vector<Rational> characteristic_polynomial(const Mat& a);

/// Distinct eigenvalues of a square matrix. Multiplicities are removed
/// exactly (square-free part of the characteristic polynomial) before the
/// float eigensolve, so repeated eigenvalues keep full double accuracy.
std::vector<std::complex<double>> distinct_eigenvalues(const Mat& a);

struct SpectralRadius {
  double value = 0.0;
  /// max over eigenvalues of sigma_min(a - lambda I) in double precision.
  double residual = 0.0;
  bool marginal = false;  // |value - 1| <= kUnitCircleTolerance
};
SpectralRadius spectral_radius(const Mat& a);

/// Rank of [a - lambda I, b] over the complex numbers; singular values below
/// tolerance * max(1, sigma_max) count as zero.
std::size_t numeric_pbh_rank(const Mat& a, const Mat& b, std::complex<double> lambda,
                             double tolerance = kUnitCircleTolerance);

// ---- text format -----------------------------------------------------------

/// Rows separated by ';', entries by ','. Entries are rationals as accepted
/// by parse_rational. An empty string is a 0 x 0 matrix.
Mat parse_matrix(std::string_view text);
std::string format_matrix(const Mat& m);

}  // namespace propid
