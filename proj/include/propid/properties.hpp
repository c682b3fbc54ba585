#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "propid/numerics.hpp"
#include "propid/set_expr.hpp"

namespace propid {

/// State dimension n and input dimension m. m = 0 describes an autonomous
/// system, which only structure properties accept.
struct Dims {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t total() const { return n + m; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Closed rational interval [lo, hi]; lo == hi is a point.
struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Non-empty bounded subset of R: a finite union of disjoint closed
/// intervals, kept sorted.
class BoundedSet {
 public:
  explicit BoundedSet(std::vector<Interval> pieces);
  static BoundedSet point(const Rational& value);

  bool contains(const Rational& x) const;
  /// Midpoint of the first piece.
  Rational inside_point() const;
  /// max(hi) + 1, always outside the set.
  Rational outside_point() const;
  /// max |x| over the set.
  Rational bound() const;

  const std::vector<Interval>& pieces() const { return pieces_; }
  friend bool operator==(const BoundedSet&, const BoundedSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// h' vec([A, B]) in S, with vec stacking columns.
struct LinearConstraint {
  std::vector<Rational> h;
  BoundedSet set;
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct Identifiability {
  friend bool operator==(const Identifiability&, const Identifiability&) = default;
};
struct Stabilizability {
  friend bool operator==(const Stabilizability&, const Stabilizability&) = default;
};
struct Controllability {
  friend bool operator==(const Controllability&, const Controllability&) = default;
};

/// Entries of A and B required to be zero; (row, col) pairs, 1-based.
struct Sparsity {
  std::vector<std::pair<std::size_t, std::size_t>> zeros_a;
  std::vector<std::pair<std::size_t, std::size_t>> zeros_b;
  friend bool operator==(const Sparsity&, const Sparsity&) = default;
};

enum class StructureMode {
  Intersection,  // Sigma_P = Sigma_1 & ... & Sigma_l, h's may be dependent
  Expression,    // arbitrary &/| tree, h's independent
};

struct LinearStructure {
  std::vector<LinearConstraint> constraints;
  SetExpr expr;
  StructureMode mode = StructureMode::Intersection;
  friend bool operator==(const LinearStructure&, const LinearStructure&) = default;
};

using PropertySpec =
    std::variant<Identifiability, Stabilizability, Controllability, Sparsity, LinearStructure>;

std::string property_name(const PropertySpec& p);

/// A candidate model (A, B).
struct SystemPair {
  Mat a;
  Mat b;

  Dims dims() const { return {a.rows(), b.cols()}; }
  /// [A, B]
  Mat augmented() const { return hstack(a, b); }
  static SystemPair from_augmented(const Mat& ab, Dims dims);
  friend bool operator==(const SystemPair&, const SystemPair&) = default;
};

/// Column-major stacking.
std::vector<Rational> vec(const Mat& m);
Mat vec_inv(std::span<const Rational> v, std::size_t rows, std::size_t cols);

/// Index of entry (row, col) (0-based) of an n-row matrix inside vec(.).
inline std::size_t vec_index(std::size_t row, std::size_t col, std::size_t n) {
  return col * n + row;
}

/// M = [vec^-1(h_1); ...; vec^-1(h_l)]', an (n+m) x (l n) matrix.
Mat build_M(std::span<const LinearConstraint> constraints, Dims dims);

/// Throws InvalidSpec when p is not a well-formed property for dims.
void validate(const PropertySpec& p, Dims dims);

/// Sorted 1-based column indices of [A, B] touched by a sparsity pattern.
std::vector<std::size_t> sparsity_columns(const Sparsity& s, Dims dims);

/// The same property written as unit-vector constraints with S = {0}.
LinearStructure as_linear_structure(const Sparsity& s, Dims dims);

/// Minimum subspace of R^(n+m) every sufficiently rich excitation must span.
Subspace minimum_subspace(const PropertySpec& p, Dims dims);

// ---- ground-truth oracles --------------------------------------------------

struct StabilizabilityCheck {
  bool stabilizable = true;
  /// Some eigenvalue sat within kUnitCircleTolerance of the unit circle.
  bool marginal = false;
};
/// PBH test at every eigenvalue with |lambda| >= 1 - kUnitCircleTolerance.
StabilizabilityCheck check_stabilizability(const SystemPair& sys);

/// Exact Kalman rank test on [B, AB, ..., A^(n-1) B].
bool is_controllable(const SystemPair& sys);

/// Values h_i' vec([A, B]), one per constraint.
std::vector<Rational> constraint_values(const SystemPair& sys, const LinearStructure& p);

/// Whether sys lies in Sigma_P. Identifiability holds for every system.
bool has_property(const SystemPair& sys, const PropertySpec& p);

/// Some system satisfying h_i' vec([A,B]) in targets[i] for all i, where each
/// target is a finite union of closed intervals. Tries the conventional points
/// (first-piece midpoints) with an exact minimal solve first and falls back to
/// Fourier-Motzkin elimination when constraints are dependent.
std::optional<SystemPair> find_system(std::span<const std::vector<Rational>> h_rows,
                                      std::span<const std::vector<Interval>> targets, Dims dims);

}  // namespace propid
