#include "propid/adversary.hpp"

#include <random>
#include <utility>

#include "propid/errors.hpp"
#include "propid/identify.hpp"

namespace propid {

namespace {

std::string row_text(const Mat& v) {
  return "[" + format_matrix(v.cols() == 1 ? v.transpose() : v) + "]";
}

Rational dot(const Mat& a, const Mat& b) { return (a.transpose() * b)(0, 0); }

// Row `row` of [A - I, B] is kappa * h'; removing kappa e_row h' leaves that
// row zero, so e_row is a left eigenvector of A at 1 orthogonal to B. The
// change is invisible to the data because h annihilates the section.
SystemPair unit_mode_partner(const SystemPair& sys, std::size_t row, const Mat& h) {
  const Dims dims = sys.dims();
  Mat r = sys.augmented().row_at(row);
  r(0, row) -= 1;
  std::optional<Rational> kappa;
  for (std::size_t i = 0; i < dims.total() && !kappa; ++i)
    if (sgn(h(i, 0)) != 0) kappa = r(0, i) / h(i, 0);
  if (!kappa || !(r == *kappa * h.transpose())) {
    throw InternalFault("partner construction: row is not a multiple of the annihilator");
  }
  const Mat shift = *kappa * (Mat::unit(dims.n, row) * h.transpose());
  return SystemPair::from_augmented(sys.augmented() - shift, dims);
}

CounterexamplePair finish(const InputSection& s, SystemPair with, SystemPair without,
                          const PropertySpec& p, std::vector<std::string> transcript,
                          std::optional<std::uint64_t> seed = std::nullopt) {
  CounterexamplePair pair{std::move(with), std::move(without), s,
                          Mat(), std::move(transcript), seed};
  pair.shared_feedback = pair.sys_with.augmented() * s.stacked();
  const PairCheck check = verify_counterexample(pair, p);
  pair.transcript.push_back(std::string("consistency: with ") +
                            (check.with_consistent ? "ok" : "FAILED") + ", without " +
                            (check.without_consistent ? "ok" : "FAILED"));
  pair.transcript.push_back(std::string("property split: with ") + (check.with_has ? "has" : "lacks") +
                            ", without " + (check.without_has ? "has" : "lacks"));
  if (!check.ok()) throw InternalFault("constructed counterexample failed verification");
  return pair;
}

std::vector<std::size_t> indices_of(const SetExpr& e) { return e.leaves(); }

}  // namespace

std::optional<Mat> find_annihilator(const InputSection& s) {
  const Mat k = kernel(s.stacked().transpose());
  if (k.cols() == 0) return std::nullopt;
  return k.col(0);
}

CounterexamplePair counterexample_stabilizability(const InputSection& s) {
  const Dims dims = s.dims();
  validate(Stabilizability{}, dims);
  const auto h = find_annihilator(s);
  if (!h) throw SectionIsRich("section is persistently exciting; stabilizability is decided");
  const std::size_t n = dims.n;
  std::vector<std::string> log{"annihilator h = " + row_text(*h)};

  Mat ab(n, dims.total());
  std::size_t row = 0;
  std::size_t lead = n;
  for (std::size_t i = 0; i < n && lead == n; ++i)
    if (sgn((*h)(i, 0)) != 0) lead = i;
  if (lead == n) {
    log.push_back("h has no state part: A = e1 e1', first row of B = h_B'");
    ab(0, 0) = 1;
    for (std::size_t j = 0; j < dims.m; ++j) ab(0, n + j) = (*h)(n + j, 0);
  } else {
    row = lead;
    log.push_back("first nonzero state entry of h at " + std::to_string(lead + 1) +
                  ": single nonzero row, A nilpotent");
    const Rational hl = (*h)(lead, 0);
    for (std::size_t j = 0; j < dims.total(); ++j) ab(lead, j) = -(*h)(j, 0) / hl;
    ab(lead, lead) += 1;
  }
  SystemPair with = SystemPair::from_augmented(ab, dims);
  SystemPair without = unit_mode_partner(with, row, *h);
  log.push_back("partner: row " + std::to_string(row + 1) +
                " of [A - I, B] removed, uncontrollable eigenvalue 1");
  return finish(s, std::move(with), std::move(without), Stabilizability{}, std::move(log));
}

CounterexamplePair counterexample_controllability(const InputSection& s) {
  const Dims dims = s.dims();
  validate(Controllability{}, dims);
  if (is_sufficiently_rich(s, Controllability{})) {
    throw SectionIsRich("section spans the controllability subspace; controllability is decided");
  }
  const std::size_t n = dims.n;
  const std::size_t m = dims.m;
  std::vector<std::string> log;

  if (n == 1) {
    const Mat k = kernel(s.stacked().transpose());
    for (std::size_t c = 0; c < k.cols(); ++c) {
      const Mat h = k.col(c);
      if (h.block(1, 0, m, 1).is_zero()) continue;
      log.push_back("annihilator with nonzero input part h = " + row_text(h));
      log.push_back("[A, B] = h' versus the zero system");
      SystemPair with = SystemPair::from_augmented(h.transpose(), dims);
      SystemPair without{Mat(1, 1), Mat(1, m)};
      return finish(s, std::move(with), std::move(without), Controllability{}, std::move(log));
    }
    throw InternalFault("no annihilator with a nonzero input part on a deficient section");
  }

  const Mat h0 = *find_annihilator(s);
  log.push_back("annihilator h = " + row_text(h0));
  // Coordinate permutation making the second state entry of h nonzero.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  bool state_part = false;
  for (std::size_t i = 0; i < n; ++i) state_part = state_part || sgn(h0(i, 0)) != 0;
  if (state_part && sgn(h0(1, 0)) == 0) {
    std::size_t swap_with = 0;
    for (std::size_t i = 2; i < n; ++i)
      if (sgn(h0(i, 0)) != 0 && swap_with == 0) swap_with = i;
    std::swap(perm[1], perm[swap_with]);
    log.push_back("state coordinates " + std::to_string(perm[1] + 1) + " and 2 swapped");
  }
  Mat p(n, n);  // x~ = P x
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1;
  Mat h = h0;
  for (std::size_t i = 0; i < n; ++i) h(i, 0) = h0(perm[i], 0);

  Mat ab(n, dims.total());
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) ab(i, n + j) = 1;
  if (!state_part) {
    log.push_back("h has no state part: A = diag(1..n), first row of B = h_B'");
    for (std::size_t i = 0; i < n; ++i) ab(i, i) = static_cast<unsigned long>(i + 1);
    for (std::size_t j = 0; j < m; ++j) ab(0, n + j) = h(n + j, 0);
  } else if (sgn(h(0, 0)) == 0) {
    log.push_back("h_1 = 0: A = diag(1,1,2,..,n-1) + e1 h_A', first row of B = h_B'");
    ab(0, 0) = 1;
    for (std::size_t i = 1; i < n; ++i) ab(i, i) = static_cast<unsigned long>(i);
    for (std::size_t j = 0; j < dims.total(); ++j) ab(0, j) += h(j, 0);
  } else {
    log.push_back("h_1 != 0: A = diag(1..n) + e1 h_A'/h_1, first row of B = h_B'/h_1");
    for (std::size_t i = 0; i < n; ++i) ab(i, i) = static_cast<unsigned long>(i + 1);
    for (std::size_t j = 0; j < dims.total(); ++j) ab(0, j) += h(j, 0) / h(0, 0);
  }
  const SystemPair tilde = SystemPair::from_augmented(ab, dims);
  const SystemPair tilde_without = unit_mode_partner(tilde, 0, h);
  const Mat pt = p.transpose();
  SystemPair with{pt * tilde.a * p, pt * tilde.b};
  SystemPair without{pt * tilde_without.a * p, pt * tilde_without.b};
  log.push_back("partner: first row of [A - I, B] removed in permuted coordinates");
  return finish(s, std::move(with), std::move(without), Controllability{}, std::move(log));
}

std::vector<SignChoice> chain_signs(const std::vector<SetOp>& ops,
                                         const std::set<std::size_t>& c1) {
  const std::size_t count = ops.size() + 1;
  if (c1.empty()) throw InternalFault("chain signs: C1 is empty");
  if (*c1.begin() < 1 || *c1.rbegin() > count) throw InternalFault("chain signs: C1 out of range");
  std::vector<SignChoice> out(count, SignChoice::Keep);
  // ops[i - 2] is the operator before Sigma_i.
  for (std::size_t i = count; i >= 1; --i) {
    if (c1.count(i) && i != 1) {
      out[i - 1] = SignChoice::Keep;
      const SignChoice rest = ops[i - 2] == SetOp::Or ? SignChoice::Complement : SignChoice::Keep;
      for (std::size_t j = 1; j < i; ++j) out[j - 1] = rest;
      break;
    }
    if (!c1.count(i)) {
      out[i - 1] = ops[i - 2] == SetOp::Or ? SignChoice::Complement : SignChoice::Keep;
    } else {
      out[0] = SignChoice::Keep;
    }
  }
  return out;
}

namespace {

bool has_c1_leaf(const SetExpr& e, const std::set<std::size_t>& c1) {
  for (const std::size_t i : e.leaves())
    if (c1.count(i)) return true;
  return false;
}

void assign_side(const SetExpr& side, SetOp op, std::vector<SignChoice>& out) {
  const SignChoice choice = op == SetOp::Or ? SignChoice::Complement : SignChoice::Keep;
  for (const std::size_t j : side.leaves()) out[j - 1] = choice;
}

}  // namespace

std::vector<SignChoice> tree_signs(const SetExpr& expr, const std::set<std::size_t>& c1) {
  if (c1.empty()) throw InternalFault("tree signs: C1 is empty");
  const auto all = indices_of(expr);
  std::vector<SignChoice> out(*std::max_element(all.begin(), all.end()), SignChoice::Keep);
  const SetExpr* cur = &expr;
  while (!cur->is_leaf()) {
    const SetExpr& lhs = cur->lhs();
    const SetExpr& rhs = cur->rhs();
    if (rhs.is_leaf() && c1.count(rhs.leaf_index())) {
      out[rhs.leaf_index() - 1] = SignChoice::Keep;
      assign_side(lhs, cur->op(), out);
      return out;
    }
    if (lhs.is_leaf() && c1.count(lhs.leaf_index())) {
      out[lhs.leaf_index() - 1] = SignChoice::Keep;
      assign_side(rhs, cur->op(), out);
      return out;
    }
    if (has_c1_leaf(rhs, c1)) {
      assign_side(lhs, cur->op(), out);
      cur = &rhs;
    } else if (has_c1_leaf(lhs, c1)) {
      assign_side(rhs, cur->op(), out);
      cur = &lhs;
    } else {
      throw InternalFault("tree signs: no C1 leaf under the current operator");
    }
  }
  if (!c1.count(cur->leaf_index())) throw InternalFault("tree signs: single leaf outside C1");
  out[cur->leaf_index() - 1] = SignChoice::Keep;
  return out;
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  return ratio(num(rng), den(rng));
}

}  // namespace

CounterexamplePair counterexample_structure(const InputSection& s, const LinearStructure& p,
                                            std::uint64_t seed) {
  const Dims dims = s.dims();
  validate(p, dims);
  const Mat m = build_M(p.constraints, dims);
  const Subspace excited = stacked_image(s);
  if (contains(excited, image(m))) {
    throw SectionIsRich("section spans im(M); the structure is decided");
  }
  std::vector<std::string> log;

  std::size_t col = 0;
  while (contains(excited, m.col(col))) ++col;
  const Mat w = m.col(col);
  const Mat h = excited.dim() == 0 ? w : w - project(excited, w);
  const Rational hw = dot(h, w);
  const std::size_t l = col / dims.n;
  const std::size_t row = col % dims.n;
  log.push_back("column " + std::to_string(col + 1) + " of M outside the section image: w = " +
                row_text(w) + " (row " + std::to_string(row + 1) + " of constraint " +
                std::to_string(l + 1) + ")");
  log.push_back("h = w - proj(w) = " + row_text(h));

  std::vector<std::vector<Rational>> h_rows;
  for (const auto& c : p.constraints) h_rows.push_back(c.h);

  if (p.mode == StructureMode::Intersection) {
    std::vector<std::vector<Interval>> targets;
    for (const auto& c : p.constraints) targets.push_back(c.set.pieces());
    const auto base = find_system(h_rows, targets, dims);
    if (!base) throw InfeasibleSigns("the intersection of the constraint sets is empty");
    const auto t = constraint_values(*base, p);
    const Rational out_point = p.constraints[l].set.outside_point();
    const Rational c = (out_point - t[l]) / hw;
    log.push_back("base system inside every set; constraint " + std::to_string(l + 1) +
                  " moved from " + to_string(t[l]) + " to " + to_string(out_point) + " with c = " +
                  to_string(c));
    const Mat delta = c * (Mat::unit(dims.n, row) * h.transpose());
    SystemPair without = SystemPair::from_augmented(base->augmented() + delta, dims);
    return finish(s, *base, std::move(without), p, std::move(log));
  }

  std::set<std::size_t> c1;
  std::vector<Mat> v(p.constraints.size());
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    v[i] = vec_inv(p.constraints[i].h, dims.n, dims.total()) * h;
    if (!v[i].is_zero()) c1.insert(i + 1);
  }
  std::string c1_text;
  for (const std::size_t i : c1) c1_text += (c1_text.empty() ? "" : ",") + std::to_string(i);
  log.push_back("C1 = {" + c1_text + "}");

  const auto chain = p.expr.flat_chain();
  const auto signs = chain ? chain_signs(*chain, c1) : tree_signs(p.expr, c1);
  log.push_back(chain ? "signs from the chain scan" : "signs from the bracket recursion");

  Mat hm(p.constraints.size(), dims.n * dims.total());
  Mat t(p.constraints.size(), 1);
  std::string sign_text;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    for (std::size_t j = 0; j < hm.cols(); ++j) hm(i, j) = p.constraints[i].h[j];
    const bool keep = signs[i] == SignChoice::Keep;
    t(i, 0) = keep ? p.constraints[i].set.inside_point() : p.constraints[i].set.outside_point();
    sign_text += (i ? " " : "") + std::string(keep ? "keep" : "complement") + "(" +
                 to_string(t(i, 0)) + ")";
  }
  log.push_back("targets: " + sign_text);
  const auto theta = solve_right(hm, t);
  if (!theta) throw InfeasibleSigns("no system meets the chosen set signs");
  SystemPair base = SystemPair::from_augmented(vec_inv(theta->values(), dims.n, dims.total()), dims);

  std::mt19937_64 rng(seed);
  Mat g(dims.n, 1);
  bool good = false;
  while (!good) {
    for (std::size_t i = 0; i < dims.n; ++i) g(i, 0) = random_rational(rng);
    good = true;
    for (const std::size_t i : c1) good = good && sgn(dot(g, v[i - 1])) != 0;
  }
  Rational alpha = 0;
  for (const std::size_t i : c1) {
    const Rational need = (p.constraints[i - 1].set.bound() + abs(t(i - 1, 0)) + 1) /
                          abs(dot(g, v[i - 1]));
    if (need > alpha) alpha = need;
  }
  alpha += 1;
  log.push_back("g = " + row_text(g) + ", alpha = " + to_string(alpha) + " (seed " +
                std::to_string(seed) + ")");
  const Mat delta = alpha * (g * h.transpose());
  SystemPair without = SystemPair::from_augmented(base.augmented() + delta, dims);
  return finish(s, std::move(base), std::move(without), p, std::move(log), seed);
}

CounterexamplePair counterexample_structure(const InputSection& s, const Sparsity& p,
                                            std::uint64_t seed) {
  validate(p, s.dims());
  if (is_sufficiently_rich(s, p)) throw SectionIsRich("section spans the sparsity subspace");
  auto pair = counterexample_structure(s, as_linear_structure(p, s.dims()), seed);
  const PairCheck check = verify_counterexample(pair, p);
  if (!check.ok()) throw InternalFault("sparsity counterexample failed verification");
  return pair;
}

CounterexamplePair counterexample(const InputSection& s, const PropertySpec& p, std::uint64_t seed) {
  struct Visitor {
    const InputSection& s;
    std::uint64_t seed;
    CounterexamplePair operator()(const Identifiability&) const {
      throw InvalidSpec("identifiability has no property split to certify");
    }
    CounterexamplePair operator()(const Stabilizability&) const {
      return counterexample_stabilizability(s);
    }
    CounterexamplePair operator()(const Controllability&) const {
      return counterexample_controllability(s);
    }
    CounterexamplePair operator()(const Sparsity& sp) const {
      return counterexample_structure(s, sp, seed);
    }
    CounterexamplePair operator()(const LinearStructure& ls) const {
      return counterexample_structure(s, ls, seed);
    }
  };
  return std::visit(Visitor{s, seed}, p);
}

PairCheck verify_counterexample(const CounterexamplePair& pair, const PropertySpec& p) {
  const Dataset data(pair.section, pair.shared_feedback);
  PairCheck out;
  out.with_consistent = consistent_set_contains(data, pair.sys_with);
  out.without_consistent = consistent_set_contains(data, pair.sys_without);
  out.with_has = has_property(pair.sys_with, p);
  out.without_has = has_property(pair.sys_without, p);
  return out;
}

}  // namespace propid
