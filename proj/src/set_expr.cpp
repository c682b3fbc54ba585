#include "propid/set_expr.hpp"

#include <cctype>

#include "propid/errors.hpp"

namespace propid {

struct SetExpr::Node {
  std::size_t index = 0;  // nonzero for leaves
  SetOp op = SetOp::And;
  std::optional<SetExpr> lhs;
  std::optional<SetExpr> rhs;
};

SetExpr SetExpr::leaf(std::size_t index) {
  if (index == 0) throw InvalidSpec("set expression leaf indices are 1-based");
  auto node = std::make_shared<Node>();
  node->index = index;
  return SetExpr(std::move(node));
}

SetExpr SetExpr::combine(SetOp op, SetExpr lhs, SetExpr rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return SetExpr(std::move(node));
}

SetExpr SetExpr::chain(SetOp op, std::size_t count) {
  if (count == 0) throw InvalidSpec("empty constraint chain");
  SetExpr e = leaf(1);
  for (std::size_t i = 2; i <= count; ++i) e = combine(op, e, leaf(i));
  return e;
}

bool SetExpr::is_leaf() const { return node_->index != 0; }

std::size_t SetExpr::leaf_index() const { return node_->index; }

SetOp SetExpr::op() const { return node_->op; }

const SetExpr& SetExpr::lhs() const { return *node_->lhs; }

const SetExpr& SetExpr::rhs() const { return *node_->rhs; }

std::vector<std::size_t> SetExpr::leaves() const {
  if (is_leaf()) return {leaf_index()};
  auto out = lhs().leaves();
  const auto right = rhs().leaves();
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

bool SetExpr::uses_only(SetOp wanted) const {
  if (is_leaf()) return true;
  return op() == wanted && lhs().uses_only(wanted) && rhs().uses_only(wanted);
}

bool SetExpr::evaluate(const std::function<bool(std::size_t)>& member) const {
  if (is_leaf()) return member(leaf_index());
  // Both sides are always evaluated so that `member` sees every leaf.
  const bool a = lhs().evaluate(member);
  const bool b = rhs().evaluate(member);
  return op() == SetOp::And ? (a && b) : (a || b);
}

std::optional<std::vector<SetOp>> SetExpr::flat_chain() const {
  std::vector<SetOp> reversed;
  const SetExpr* cur = this;
  while (!cur->is_leaf()) {
    if (!cur->rhs().is_leaf()) return std::nullopt;
    reversed.push_back(cur->op());
    cur = &cur->lhs();
  }
  const auto order = leaves();
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] != i + 1) return std::nullopt;
  return std::vector<SetOp>(reversed.rbegin(), reversed.rend());
}

std::string SetExpr::to_string() const {
  if (is_leaf()) return std::to_string(leaf_index());
  std::string right = rhs().to_string();
  if (!rhs().is_leaf()) right = "(" + right + ")";
  return lhs().to_string() + (op() == SetOp::And ? " & " : " | ") + right;
}

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.is_leaf() || b.is_leaf()) {
    return a.is_leaf() && b.is_leaf() && a.leaf_index() == b.leaf_index();
  }
  return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  SetExpr expression() {
    SetExpr e = term();
    while (true) {
      skip_space();
      if (pos_ < text_.size() && (text_[pos_] == '&' || text_[pos_] == '|')) {
        const SetOp op = text_[pos_] == '&' ? SetOp::And : SetOp::Or;
        ++pos_;
        e = SetExpr::combine(op, e, term());
      } else {
        return e;
      }
    }
  }

  SetExpr term() {
    skip_space();
    if (pos_ >= text_.size()) fail("expression ends early");
    if (text_[pos_] == '(') {
      ++pos_;
      SetExpr e = expression();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return e;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a constraint index");
    return SetExpr::leaf(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw ParseError(std::string("set expression '") + std::string(text_) + "': " + what +
                     " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetExpr SetExpr::parse(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace propid
