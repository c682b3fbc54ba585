#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <random>
#include <set>
#include <string_view>
#include <vector>

#include "propid/errors.hpp"
#include "propid/harness.hpp"
#include "propid/numerics.hpp"
#include "propid/properties.hpp"
#include "propid/richness.hpp"

namespace propid {

// gtest printers
inline void PrintTo(const Mat& m, std::ostream* os) { *os << "[" << format_matrix(m) << "]"; }
inline void PrintTo(const SystemPair& s, std::ostream* os) {
  *os << "A=[" << format_matrix(s.a) << "] B=[" << format_matrix(s.b) << "]";
}
inline void PrintTo(const Dims& d, std::ostream* os) { *os << "n=" << d.n << " m=" << d.m; }

}  // namespace propid

namespace propid::testing {

inline Mat mat(std::string_view text) { return parse_matrix(text); }

inline Rational q(long num, long den = 1) { return ratio(num, den); }

// ---- worked examples -------------------------------------------------------

inline InputSection gain_section() { return {mat("1,0.5;0,1"), mat("-1,-1")}; }
inline Mat gain_stable_feedback() { return mat("0.5,-0.25;1,1"); }
inline Mat gain_marginal_feedback() { return mat("0.5,0;1,2"); }

inline Sparsity two_state_sparsity() { return {{{1, 1}}, {{2, 1}}}; }
inline SystemPair two_state_system() { return {mat("0,1;2,1"), mat("1;0")}; }
inline SystemPair two_state_violator() { return {mat("1,1;2,1"), mat("1;0")}; }
inline InputSection two_state_section() { return {mat("1,0;0,0"), mat("0,1")}; }

inline LinearStructure single_constraint(std::vector<Rational> h, BoundedSet set) {
  return {{{std::move(h), std::move(set)}}, SetExpr::leaf(1), StructureMode::Intersection};
}

// ---- random generation -----------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  Rational rational(int span = 4, int max_den = 3) {
    return ratio(integer(-span, span), integer(1, max_den));
  }
  Mat matrix(std::size_t rows, std::size_t cols, int span = 4, int max_den = 3) {
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational(span, max_den);
    return m;
  }
  Mat invertible(std::size_t k) {
    while (true) {
      Mat m = matrix(k, k);
      if (rank(m) == k) return m;
    }
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline SystemPair random_system(Rng& rng, Dims dims) {
  return {rng.matrix(dims.n, dims.n), rng.matrix(dims.n, dims.m)};
}

inline Dims random_dims(Rng& rng, std::size_t max_n = 3, std::size_t max_m = 3, std::size_t min_m = 1) {
  return {rng.index(1, max_n), rng.index(min_m, max_m)};
}

inline Sparsity random_sparsity(Rng& rng, Dims dims) {
  Sparsity s;
  while (s.zeros_a.empty() && s.zeros_b.empty()) {
    for (std::size_t r = 1; r <= dims.n; ++r) {
      for (std::size_t c = 1; c <= dims.n; ++c)
        if (rng.coin(0.25)) s.zeros_a.emplace_back(r, c);
      for (std::size_t c = 1; c <= dims.m; ++c)
        if (rng.coin(0.25)) s.zeros_b.emplace_back(r, c);
    }
  }
  return s;
}

/// Sets the targeted entries to zero.
inline SystemPair apply_sparsity(SystemPair sys, const Sparsity& s) {
  for (const auto& [r, c] : s.zeros_a) sys.a(r - 1, c - 1) = 0;
  for (const auto& [r, c] : s.zeros_b) sys.b(r - 1, c - 1) = 0;
  return sys;
}

/// Sparse h with small integer entries.
inline std::vector<Rational> random_h(Rng& rng, Dims dims) {
  const std::size_t width = dims.n * dims.total();
  std::vector<Rational> h(width);
  while (std::all_of(h.begin(), h.end(), [](const Rational& v) { return sgn(v) == 0; })) {
    for (auto& v : h) v = rng.coin(0.3) ? Rational(rng.integer(-2, 2)) : Rational(0);
  }
  return h;
}

/// A set that contains `value` (inside) or not.
inline BoundedSet set_around(Rng& rng, const Rational& value, bool inside) {
  const Rational width = ratio(rng.integer(0, 2), 2);
  if (inside) {
    std::vector<Interval> pieces{{value - width, value + width}};
    if (rng.coin(0.3)) pieces.push_back({value + width + 1, value + width + 2});
    return BoundedSet(pieces);
  }
  const Rational lo = value + 1 + ratio(rng.integer(0, 3), 2);
  std::vector<Interval> pieces{{lo, lo + width}};
  if (rng.coin(0.3)) pieces.push_back({value - 3 - width, value - 2});
  return BoundedSet(pieces);
}

inline SetExpr random_expr(Rng& rng, std::size_t count) {
  std::vector<SetExpr> items;
  for (std::size_t i = 1; i <= count; ++i) items.push_back(SetExpr::leaf(i));
  while (items.size() > 1) {
    const std::size_t at = rng.index(0, items.size() - 2);
    const SetOp op = rng.coin() ? SetOp::And : SetOp::Or;
    items[at] = SetExpr::combine(op, items[at], items[at + 1]);
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  }
  return items.front();
}

/// Random structure whose membership at `sys` is decided per constraint by
/// coin flips. Expression mode draws independent h's; intersection mode may
/// repeat a direction, in which case the draw is retried until the
/// intersection is nonempty.
inline LinearStructure random_structure_once(Rng& rng, Dims dims, const SystemPair& sys, StructureMode mode,
                                        std::size_t count) {
  if (mode == StructureMode::Expression) count = std::min(count, dims.n * dims.total());
  LinearStructure s{{}, SetExpr::leaf(1), mode};
  Mat rows(0, dims.n * dims.total());
  while (s.constraints.size() < count) {
    std::vector<Rational> h;
    if (mode == StructureMode::Intersection && !s.constraints.empty() && rng.coin(0.25)) {
      h = s.constraints[rng.index(0, s.constraints.size() - 1)].h;
      for (auto& v : h) v *= 2;
    } else {
      h = random_h(rng, dims);
    }
    const Mat cand = vstack(rows, Mat::row(h));
    if (mode == StructureMode::Expression && rank(cand) != cand.rows()) continue;
    rows = cand;
    LinearStructure probe{{{h, BoundedSet::point(0)}}, SetExpr::leaf(1), mode};
    const Rational value = constraint_values(sys, probe)[0];
    s.constraints.push_back({h, set_around(rng, value, rng.coin(0.6))});
  }
  s.expr = mode == StructureMode::Intersection ? SetExpr::chain(SetOp::And, count)
                                               : random_expr(rng, count);
  return s;
}

inline LinearStructure random_structure(Rng& rng, Dims dims, const SystemPair& sys, StructureMode mode,
                                        std::size_t count) {
  while (true) {
    LinearStructure s = random_structure_once(rng, dims, sys, mode, count);
    try {
      validate(s, dims);
      return s;
    } catch (const InvalidSpec&) {
    }
  }
}

/// Rich section: a basis of L_P, random extra columns, mixed by an
/// invertible matrix.
inline InputSection random_rich_section(Rng& rng, const PropertySpec& p, Dims dims, std::size_t extra) {
  Mat basis = minimum_subspace(p, dims).basis();
  basis = hstack(basis, rng.matrix(dims.total(), extra));
  return InputSection::from_stacked(basis * rng.invertible(basis.cols()), dims);
}

/// Section spanning a random proper subspace of L_P plus directions outside
/// it; never rich. Requires dim L_P >= 1.
inline InputSection random_deficient_section(Rng& rng, const PropertySpec& p, Dims dims) {
  const Subspace lp = minimum_subspace(p, dims);
  const Mat basis = lp.basis();
  const std::size_t drop = rng.index(0, basis.cols() - 1);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < basis.cols(); ++c)
    if (c != drop && rng.coin(0.7)) keep.push_back(c);
  Mat cols = basis.select_cols(keep);
  // Directions orthogonal to L_P never complete it.
  const Mat perp = orthogonal_complement(lp).basis();
  for (std::size_t c = 0; c < perp.cols(); ++c)
    if (rng.coin(0.5)) cols = hstack(cols, perp.col(c));
  if (cols.cols() == 0) cols = Mat(dims.total(), 1);
  Mat mixed = cols * rng.invertible(cols.cols());
  if (rng.coin(0.3)) mixed = hstack(mixed, mixed.col(0));
  return InputSection::from_stacked(mixed, dims);
}

}  // namespace propid::testing
