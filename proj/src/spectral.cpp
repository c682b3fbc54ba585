#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "propid/errors.hpp"
#include "propid/numerics.hpp"

namespace propid {

namespace {

// Polynomials are ascending coefficient vectors over the rationals.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<Poly, Poly> divide(Poly a, const Poly& b) {
  trim(a);
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational factor = a.back() / b.back();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::complex<double> horner(const std::vector<double>& coeffs, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Roots of a monic square-free polynomial: companion-matrix eigenvalues,
// then a few Newton steps that are kept only when they reduce |q(z)|.
std::vector<std::complex<double>> simple_roots(const Poly& q) {
  const std::size_t degree = q.size() - 1;
  std::vector<double> c(q.size());
  std::transform(q.begin(), q.end(), c.begin(), [](const Rational& v) { return to_double(v); });
  if (degree == 0) return {};
  if (degree == 1) return {std::complex<double>(-c[0], 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                    static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  for (std::size_t i = 0; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -c[i];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw InternalFault("eigenvalue iteration did not converge");

  std::vector<double> dc(degree);
  for (std::size_t i = 1; i <= degree; ++i) dc[i - 1] = static_cast<double>(i) * c[i];

  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    for (int step = 0; step < 4; ++step) {
      const std::complex<double> fz = horner(c, z);
      const std::complex<double> dz = horner(dc, z);
      if (std::abs(dz) == 0.0) break;
      const std::complex<double> next = z - fz / dz;
      if (std::abs(horner(c, next)) >= std::abs(fz)) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

double smallest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

std::vector<Rational> characteristic_polynomial(const Mat& a) {
  if (!a.square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier recursion, exact over the rationals.
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Mat m(n, n);
  const Mat identity = Mat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * identity;
    c[n - k] = -trace(a * m) / Rational(static_cast<long>(k));
  }
  return c;
}

std::vector<std::complex<double>> distinct_eigenvalues(const Mat& a) {
  const Poly p = characteristic_polynomial(a);
  if (p.size() <= 1) return {};
  const Poly repeated = gcd(p, derivative(p));
  const Poly square_free = monic(divide(p, repeated).first);
  return simple_roots(square_free);
}

SpectralRadius spectral_radius(const Mat& a) {
  if (!a.square()) throw DimensionMismatch("spectral radius of a non-square matrix");
  SpectralRadius out;
  if (a.rows() == 0) return out;
  const Eigen::MatrixXd af = to_eigen(a);
  const auto n = af.rows();
  for (const auto& lambda : distinct_eigenvalues(a)) {
    out.value = std::max(out.value, std::abs(lambda));
    const Eigen::MatrixXcd shifted =
        af.cast<std::complex<double>>() - lambda * Eigen::MatrixXcd::Identity(n, n);
    out.residual = std::max(out.residual, smallest_singular_value(shifted));
  }
  out.marginal = std::abs(out.value - 1.0) <= kUnitCircleTolerance;
  return out;
}

std::size_t numeric_pbh_rank(const Mat& a, const Mat& b, std::complex<double> lambda,
                             double tolerance) {
  if (!a.square() || a.rows() != b.rows()) throw DimensionMismatch("PBH test: shapes of A and B");
  const auto n = static_cast<Eigen::Index>(a.rows());
  const auto m = static_cast<Eigen::Index>(b.cols());
  Eigen::MatrixXcd pencil(n, n + m);
  pencil.leftCols(n) = to_eigen(a).cast<std::complex<double>>() - lambda * Eigen::MatrixXcd::Identity(n, n);
  pencil.rightCols(m) = to_eigen(b).cast<std::complex<double>>();
  if (n == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pencil);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv.maxCoeff() : 0.0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tolerance * scale) ++r;
  return r;
}

}  // namespace propid
