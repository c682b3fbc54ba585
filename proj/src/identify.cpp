#include "propid/identify.hpp"

#include <algorithm>

namespace propid {

std::string verdict_name(Verdict v) {
  return v == Verdict::HasProperty ? "has-property" : "lacks-property";
}

NotIdentifiable::NotIdentifiable(std::size_t rank, std::size_t needed)
    : Error("not identifiable: rank [X-; U-] = " + std::to_string(rank) + " < n+m = " +
            std::to_string(needed)),
      deficit_(needed - rank) {}

bool consistent_set_contains(const Dataset& d, const SystemPair& sys) {
  if (sys.dims() != d.dims() || sys.a.cols() != d.dims().n) {
    throw DimensionMismatch("system and dataset dimensions differ");
  }
  return sys.a * d.section().x_minus() + sys.b * d.section().u_minus() == d.x_plus();
}

namespace {

Mat solve_or_fault(const Mat& a, const Mat& b) {
  auto q = solve_right(a, b);
  if (!q) throw InternalFault("no Q solves [X-; U-] Q = target on sufficiently rich data");
  return *q;
}

std::string entry_label(char which, std::size_t r, std::size_t c) {
  return std::string(1, which) + "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

}  // namespace

Identification identify_sparsity(const Dataset& d, const Sparsity& p) {
  const Dims dims = d.dims();
  require_sufficiently_rich(d.section(), p);
  const auto cols = sparsity_columns(p, dims);
  Mat target(dims.total(), 0);
  for (const std::size_t c : cols) target = hstack(target, Mat::unit(dims.total(), c - 1));

  Identification out;
  out.q = solve_or_fault(d.section().stacked(), target);
  out.x_plus_q = d.x_plus() * *out.q;
  auto position = [&](std::size_t column) {
    return static_cast<std::size_t>(std::lower_bound(cols.begin(), cols.end(), column) - cols.begin());
  };
  auto check = [&](std::string label, std::size_t row, std::size_t column) {
    const Rational& v = (*out.x_plus_q)(row - 1, position(column));
    out.witnesses.push_back({std::move(label), v, sgn(v) == 0});
  };
  for (const auto& [r, c] : p.zeros_a) check(entry_label('A', r, c), r, c);
  for (const auto& [r, c] : p.zeros_b) check(entry_label('B', r, c), r, dims.n + c);
  const bool all_zero = std::all_of(out.witnesses.begin(), out.witnesses.end(),
                                    [](const Witness& w) { return w.satisfied; });
  out.verdict = all_zero ? Verdict::HasProperty : Verdict::LacksProperty;
  return out;
}

Identification identify_linear_structure(const Dataset& d, const LinearStructure& p) {
  const Dims dims = d.dims();
  require_sufficiently_rich(d.section(), p);
  Identification out;
  out.q = solve_or_fault(d.section().stacked(), build_M(p.constraints, dims));
  out.x_plus_q = d.x_plus() * *out.q;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Rational v = trace(out.x_plus_q->block(0, i * dims.n, dims.n, dims.n));
    out.witnesses.push_back({"h" + std::to_string(i + 1) + "'vec[A,B]", v,
                             p.constraints[i].set.contains(v)});
  }
  const bool member =
      p.expr.evaluate([&](std::size_t i) { return out.witnesses[i - 1].satisfied; });
  out.verdict = member ? Verdict::HasProperty : Verdict::LacksProperty;
  return out;
}

SystemPair recover_model(const Dataset& d) {
  const Dims dims = d.dims();
  const Mat stacked = d.section().stacked();
  const std::size_t r = rank(stacked);
  if (r < dims.total()) throw NotIdentifiable(r, dims.total());
  const auto theta = solve_right(stacked.transpose(), d.x_plus().transpose());
  if (!theta) throw InconsistentData("no exact (A, B) reproduces X+ from a persistently exciting section");
  return SystemPair::from_augmented(theta->transpose(), dims);
}

Identification identify_stabilizability(const Dataset& d) {
  require_sufficiently_rich(d.section(), Stabilizability{});
  Identification out;
  out.model = recover_model(d);
  const auto check = check_stabilizability(*out.model);
  out.marginal = check.marginal;
  out.verdict = check.stabilizable ? Verdict::HasProperty : Verdict::LacksProperty;
  return out;
}

Identification identify_controllability(const Dataset& d) {
  const Dims dims = d.dims();
  require_sufficiently_rich(d.section(), Controllability{});
  Identification out;
  if (dims.n == 1) {
    // Only B matters: read it off the input directions without recovering A.
    Mat target(dims.total(), 0);
    for (std::size_t i = 1; i <= dims.m; ++i) target = hstack(target, Mat::unit(dims.total(), i));
    out.q = solve_or_fault(d.section().stacked(), target);
    out.x_plus_q = d.x_plus() * *out.q;
    for (std::size_t i = 0; i < dims.m; ++i) {
      const Rational& v = (*out.x_plus_q)(0, i);
      out.witnesses.push_back({entry_label('B', 1, i + 1), v, sgn(v) != 0});
    }
    out.verdict = out.x_plus_q->is_zero() ? Verdict::LacksProperty : Verdict::HasProperty;
    return out;
  }
  out.model = recover_model(d);
  out.verdict = is_controllable(*out.model) ? Verdict::HasProperty : Verdict::LacksProperty;
  return out;
}

Identification identify(const Dataset& d, const PropertySpec& p) {
  validate(p, d.dims());
  struct Visitor {
    const Dataset& d;
    Identification operator()(const Identifiability&) const {
      require_sufficiently_rich(d.section(), Identifiability{});
      Identification out;
      out.model = recover_model(d);
      out.verdict = Verdict::HasProperty;
      return out;
    }
    Identification operator()(const Stabilizability&) const { return identify_stabilizability(d); }
    Identification operator()(const Controllability&) const { return identify_controllability(d); }
    Identification operator()(const Sparsity& s) const { return identify_sparsity(d, s); }
    Identification operator()(const LinearStructure& s) const {
      return identify_linear_structure(d, s);
    }
  };
  return std::visit(Visitor{d}, p);
}

Gain gain_from_data(const Dataset& d) {
  const Mat& x = d.section().x_minus();
  if (!x.square()) {
    throw NotApplicable("gain formula needs k = n excitations (have k = " + std::to_string(x.cols()) +
                        ", n = " + std::to_string(x.rows()) + ")");
  }
  const auto x_inv = inverse(x);
  if (!x_inv) throw NotApplicable("gain formula needs an invertible X-");
  Gain g{d.section().u_minus() * *x_inv, d.x_plus() * *x_inv, {}, false};
  g.radius = spectral_radius(g.closed_loop);
  g.stabilizing = g.radius.value < 1.0 - kUnitCircleTolerance;
  return g;
}

std::size_t dataset_rank_test(const Dataset& d, const Rational& lambda) {
  return rank(d.x_plus() - lambda * d.section().x_minus());
}

}  // namespace propid
