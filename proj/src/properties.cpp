#include "propid/properties.hpp"

#include <algorithm>
#include <set>

#include "propid/errors.hpp"

namespace propid {

// ---- BoundedSet ------------------------------------------------------------

BoundedSet::BoundedSet(std::vector<Interval> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidSpec("a constraint set must be non-empty");
  for (const auto& p : pieces_) {
    if (p.lo > p.hi) {
      throw InvalidSpec("interval [" + to_string(p.lo) + ", " + to_string(p.hi) + "] is empty");
    }
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].lo <= pieces_[i - 1].hi) throw InvalidSpec("constraint set pieces overlap");
  }
}

BoundedSet BoundedSet::point(const Rational& value) { return BoundedSet({{value, value}}); }

bool BoundedSet::contains(const Rational& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const Interval& p) { return p.lo <= x && x <= p.hi; });
}

Rational BoundedSet::inside_point() const {
  return (pieces_.front().lo + pieces_.front().hi) / 2;
}

Rational BoundedSet::outside_point() const { return pieces_.back().hi + 1; }

Rational BoundedSet::bound() const {
  const Rational lo = abs(pieces_.front().lo);
  const Rational hi = abs(pieces_.back().hi);
  return lo > hi ? lo : hi;
}

// ---- naming, vec -----------------------------------------------------------

std::string property_name(const PropertySpec& p) {
  struct Visitor {
    std::string operator()(const Identifiability&) const { return "identifiability"; }
    std::string operator()(const Stabilizability&) const { return "stabilizability"; }
    std::string operator()(const Controllability&) const { return "controllability"; }
    std::string operator()(const Sparsity&) const { return "sparsity"; }
    std::string operator()(const LinearStructure& s) const {
      return s.mode == StructureMode::Intersection ? "linear-intersection" : "linear-expression";
    }
  };
  return std::visit(Visitor{}, p);
}

SystemPair SystemPair::from_augmented(const Mat& ab, Dims dims) {
  if (ab.rows() != dims.n || ab.cols() != dims.total()) {
    throw DimensionMismatch("[A, B] must be " + std::to_string(dims.n) + "x" +
                            std::to_string(dims.total()));
  }
  return {ab.block(0, 0, dims.n, dims.n), ab.block(0, dims.n, dims.n, dims.m)};
}

std::vector<Rational> vec(const Mat& m) {
  std::vector<Rational> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
  return out;
}

Mat vec_inv(std::span<const Rational> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) {
    throw DimensionMismatch("vec^-1: length " + std::to_string(v.size()) + " cannot fill " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
  Mat out(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = v[vec_index(r, c, rows)];
  return out;
}

Mat build_M(std::span<const LinearConstraint> constraints, Dims dims) {
  Mat m(dims.total(), 0);
  for (const auto& c : constraints) m = hstack(m, vec_inv(c.h, dims.n, dims.total()).transpose());
  return m;
}

// ---- validation ------------------------------------------------------------

namespace {

Mat constraint_matrix(std::span<const LinearConstraint> constraints, std::size_t width) {
  Mat h(constraints.size(), width);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) h(i, j) = constraints[i].h[j];
  return h;
}

std::vector<std::vector<Rational>> h_rows_of(const LinearStructure& s) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& c : s.constraints) rows.push_back(c.h);
  return rows;
}

void validate_structure(const LinearStructure& s, Dims dims) {
  const std::size_t width = dims.n * dims.total();
  const std::size_t count = s.constraints.size();
  if (count == 0) throw InvalidSpec("a linear structure needs at least one constraint");
  for (std::size_t i = 0; i < count; ++i) {
    const auto& h = s.constraints[i].h;
    if (h.size() != width) {
      throw InvalidSpec("constraint " + std::to_string(i + 1) + ": h has length " +
                        std::to_string(h.size()) + ", expected n(n+m) = " + std::to_string(width));
    }
    if (std::all_of(h.begin(), h.end(), [](const Rational& v) { return sgn(v) == 0; })) {
      throw InvalidSpec("constraint " + std::to_string(i + 1) + ": h is zero");
    }
  }
  auto leaves = s.expr.leaves();
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves.size() != count || leaves[i] != i + 1) {
      throw InvalidSpec("set expression '" + s.expr.to_string() + "' must use each of the " +
                        std::to_string(count) + " constraints exactly once");
    }
  }
  if (s.mode == StructureMode::Intersection) {
    if (!s.expr.uses_only(SetOp::And)) {
      throw InvalidSpec("intersection mode allows only '&' in the set expression");
    }
    std::vector<std::vector<Interval>> targets;
    for (const auto& c : s.constraints) targets.push_back(c.set.pieces());
    if (!find_system(h_rows_of(s), targets, dims)) {
      throw InvalidSpec("the intersection of the constraint sets is empty");
    }
  } else if (rank(constraint_matrix(s.constraints, width)) != count) {
    throw InvalidSpec("expression mode needs linearly independent h vectors");
  }
}

}  // namespace

void validate(const PropertySpec& p, Dims dims) {
  if (dims.n == 0) throw InvalidSpec("state dimension n must be at least 1");
  if (std::holds_alternative<Stabilizability>(p) || std::holds_alternative<Controllability>(p)) {
    if (dims.m == 0) throw InvalidSpec(property_name(p) + " needs at least one input (m >= 1)");
  }
  if (const auto* s = std::get_if<Sparsity>(&p)) {
    if (s->zeros_a.empty() && s->zeros_b.empty()) {
      throw InvalidSpec("a sparsity pattern needs at least one zero entry");
    }
    for (const auto& [r, c] : s->zeros_a) {
      if (r < 1 || r > dims.n || c < 1 || c > dims.n) {
        throw InvalidSpec("zeros_A entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") is outside a " + std::to_string(dims.n) + "x" +
                          std::to_string(dims.n) + " matrix");
      }
    }
    for (const auto& [r, c] : s->zeros_b) {
      if (r < 1 || r > dims.n || c < 1 || c > dims.m) {
        throw InvalidSpec("zeros_B entry (" + std::to_string(r) + "," + std::to_string(c) +
                          ") is outside a " + std::to_string(dims.n) + "x" +
                          std::to_string(dims.m) + " matrix");
      }
    }
  }
  if (const auto* s = std::get_if<LinearStructure>(&p)) validate_structure(*s, dims);
}

std::vector<std::size_t> sparsity_columns(const Sparsity& s, Dims dims) {
  std::set<std::size_t> cols;
  for (const auto& entry : s.zeros_a) cols.insert(entry.second);
  for (const auto& entry : s.zeros_b) cols.insert(dims.n + entry.second);
  return {cols.begin(), cols.end()};
}

LinearStructure as_linear_structure(const Sparsity& s, Dims dims) {
  const std::size_t width = dims.n * dims.total();
  std::vector<LinearConstraint> constraints;
  auto add = [&](std::size_t row, std::size_t col) {
    std::vector<Rational> h(width);
    h[vec_index(row, col, dims.n)] = 1;
    constraints.push_back({std::move(h), BoundedSet::point(0)});
  };
  for (const auto& [r, c] : s.zeros_a) add(r - 1, c - 1);
  for (const auto& [r, c] : s.zeros_b) add(r - 1, dims.n + c - 1);
  const std::size_t count = constraints.size();
  return {std::move(constraints), SetExpr::chain(SetOp::And, count), StructureMode::Intersection};
}

Subspace minimum_subspace(const PropertySpec& p, Dims dims) {
  validate(p, dims);
  const std::size_t total = dims.total();
  if (std::holds_alternative<Identifiability>(p) || std::holds_alternative<Stabilizability>(p)) {
    return Subspace::full(total);
  }
  if (std::holds_alternative<Controllability>(p)) {
    if (dims.n > 1) return Subspace::full(total);
    Mat basis(total, 0);
    for (std::size_t i = 1; i <= dims.m; ++i) basis = hstack(basis, Mat::unit(total, i));
    return Subspace::span(basis);
  }
  if (const auto* s = std::get_if<Sparsity>(&p)) {
    Mat basis(total, 0);
    for (const std::size_t c : sparsity_columns(*s, dims)) basis = hstack(basis, Mat::unit(total, c - 1));
    return Subspace::span(basis);
  }
  return image(build_M(std::get<LinearStructure>(p).constraints, dims));
}

// ---- oracles ---------------------------------------------------------------

StabilizabilityCheck check_stabilizability(const SystemPair& sys) {
  StabilizabilityCheck out;
  const std::size_t n = sys.a.rows();
  for (const auto& lambda : distinct_eigenvalues(sys.a)) {
    const double modulus = std::abs(lambda);
    if (std::abs(modulus - 1.0) <= kUnitCircleTolerance) out.marginal = true;
    if (modulus < 1.0 - kUnitCircleTolerance) continue;
    if (numeric_pbh_rank(sys.a, sys.b, lambda) < n) out.stabilizable = false;
  }
  return out;
}

bool is_controllable(const SystemPair& sys) {
  const std::size_t n = sys.a.rows();
  Mat krylov = sys.b;
  Mat block = sys.b;
  for (std::size_t i = 1; i < n; ++i) {
    block = sys.a * block;
    krylov = hstack(krylov, block);
  }
  return rank(krylov) == n;
}

std::vector<Rational> constraint_values(const SystemPair& sys, const LinearStructure& p) {
  const auto theta = vec(sys.augmented());
  std::vector<Rational> values;
  for (const auto& c : p.constraints) {
    if (c.h.size() != theta.size()) throw DimensionMismatch("constraint length vs system size");
    Rational v = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) v += c.h[i] * theta[i];
    values.push_back(v);
  }
  return values;
}

bool has_property(const SystemPair& sys, const PropertySpec& p) {
  if (sys.a.rows() != sys.a.cols() || sys.a.rows() != sys.b.rows()) {
    throw DimensionMismatch("A must be square with as many rows as B");
  }
  struct Visitor {
    const SystemPair& sys;
    bool operator()(const Identifiability&) const { return true; }
    bool operator()(const Stabilizability&) const { return check_stabilizability(sys).stabilizable; }
    bool operator()(const Controllability&) const { return is_controllable(sys); }
    bool operator()(const Sparsity& s) const {
      for (const auto& [r, c] : s.zeros_a)
        if (sgn(sys.a(r - 1, c - 1)) != 0) return false;
      for (const auto& [r, c] : s.zeros_b)
        if (sgn(sys.b(r - 1, c - 1)) != 0) return false;
      return true;
    }
    bool operator()(const LinearStructure& s) const {
      const auto values = constraint_values(sys, s);
      return s.expr.evaluate(
          [&](std::size_t i) { return s.constraints[i - 1].set.contains(values[i - 1]); });
    }
  };
  return std::visit(Visitor{sys}, p);
}

// ---- constructing members --------------------------------------------------

namespace {

// a . x <= b
struct Inequality {
  std::vector<Rational> a;
  Rational b;
};

// Fourier-Motzkin elimination with witness extraction.
std::optional<std::vector<Rational>> fourier_motzkin(std::vector<Inequality> system,
                                                     std::size_t vars) {
  std::vector<std::vector<Inequality>> stages{std::move(system)};
  for (std::size_t v = vars; v-- > 0;) {
    const auto& cur = stages.back();
    std::vector<Inequality> next, pos, neg;
    for (const auto& q : cur) {
      const int s = sgn(q.a[v]);
      (s > 0 ? pos : s < 0 ? neg : next).push_back(q);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational lp = -q.a[v];
        const Rational lq = p.a[v];
        Inequality r{std::vector<Rational>(vars), lp * p.b + lq * q.b};
        for (std::size_t u = 0; u < vars; ++u) r.a[u] = lp * p.a[u] + lq * q.a[u];
        r.a[v] = 0;
        next.push_back(std::move(r));
      }
    }
    stages.push_back(std::move(next));
  }
  for (const auto& q : stages.back())
    if (sgn(q.b) < 0) return std::nullopt;

  std::vector<Rational> x(vars);
  for (std::size_t v = 0; v < vars; ++v) {
    std::optional<Rational> lower, upper;
    for (const auto& q : stages[vars - v - 1]) {
      if (sgn(q.a[v]) == 0) continue;
      Rational rhs = q.b;
      for (std::size_t u = 0; u < v; ++u) rhs -= q.a[u] * x[u];
      const Rational bound = rhs / q.a[v];
      if (sgn(q.a[v]) > 0) {
        if (!upper || bound < *upper) upper = bound;
      } else if (!lower || bound > *lower) {
        lower = bound;
      }
    }
    if (lower && upper) x[v] = (*lower + *upper) / 2;
    else if (lower) x[v] = *lower;
    else if (upper) x[v] = *upper;
  }
  return x;
}

}  // namespace

std::optional<SystemPair> find_system(std::span<const std::vector<Rational>> h_rows,
                                      std::span<const std::vector<Interval>> targets, Dims dims) {
  const std::size_t count = h_rows.size();
  const std::size_t width = dims.n * dims.total();
  if (targets.size() != count) throw DimensionMismatch("one target per constraint expected");
  Mat h(count, width);
  for (std::size_t i = 0; i < count; ++i) {
    if (h_rows[i].size() != width) throw DimensionMismatch("constraint length vs system size");
    if (targets[i].empty()) return std::nullopt;
    for (std::size_t j = 0; j < width; ++j) h(i, j) = h_rows[i][j];
  }
  auto to_system = [&](const Mat& t) -> std::optional<SystemPair> {
    const auto theta = solve_right(h, t);
    if (!theta) return std::nullopt;
    return SystemPair::from_augmented(vec_inv(theta->values(), dims.n, dims.total()), dims);
  };

  Mat conventional(count, 1);
  for (std::size_t i = 0; i < count; ++i)
    conventional(i, 0) = (targets[i].front().lo + targets[i].front().hi) / 2;
  if (auto sys = to_system(conventional)) return sys;

  // t must lie in im(H): t = sum over free coordinates x_f of coef(., f) x_f.
  const Mat left_null = kernel(h.transpose());
  const Echelon eq = reduced_row_echelon(left_null.transpose());
  std::vector<bool> dependent(count, false);
  for (const std::size_t p : eq.pivots) dependent[p] = true;
  std::vector<std::size_t> free_coords;
  for (std::size_t i = 0; i < count; ++i)
    if (!dependent[i]) free_coords.push_back(i);
  Mat coef(count, free_coords.size());
  for (std::size_t f = 0; f < free_coords.size(); ++f) {
    coef(free_coords[f], f) = 1;
    for (std::size_t r = 0; r < eq.pivots.size(); ++r) coef(eq.pivots[r], f) = -eq.reduced(r, free_coords[f]);
  }

  std::vector<std::size_t> choice(count, 0);
  while (true) {
    std::vector<Inequality> system;
    for (std::size_t i = 0; i < count; ++i) {
      const Interval& piece = targets[i][choice[i]];
      Inequality upper{std::vector<Rational>(free_coords.size()), piece.hi};
      Inequality lower{std::vector<Rational>(free_coords.size()), -piece.lo};
      for (std::size_t f = 0; f < free_coords.size(); ++f) {
        upper.a[f] = coef(i, f);
        lower.a[f] = -coef(i, f);
      }
      system.push_back(std::move(upper));
      system.push_back(std::move(lower));
    }
    if (const auto x = fourier_motzkin(std::move(system), free_coords.size())) {
      const Mat t = coef * Mat::column(*x);
      if (auto sys = to_system(t)) return sys;
      throw InternalFault("Fourier-Motzkin witness left the image of the constraint matrix");
    }
    std::size_t i = 0;
    while (i < count && ++choice[i] == targets[i].size()) choice[i++] = 0;
    if (i == count) return std::nullopt;
  }
}

}  // namespace propid
