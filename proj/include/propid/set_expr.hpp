#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace propid {

enum class SetOp { And, Or };

/// Immutable expression tree over constraint sets Sigma_1..Sigma_l combined
/// with intersection (And) and union (Or). Leaves carry 1-based indices.
///
/// Text form: integers, `&`, `|` and parentheses. `&` and `|` have equal
/// precedence and associate to the left, so `1 | 2 & 3` means
/// `(1 | 2) & 3`, matching a left-to-right chain of set operations.
class SetExpr {
 public:
  static SetExpr leaf(std::size_t index);
  static SetExpr combine(SetOp op, SetExpr lhs, SetExpr rhs);
  /// Sigma_1 op Sigma_2 op ... op Sigma_count, left-associated.
  static SetExpr chain(SetOp op, std::size_t count);
  static SetExpr parse(std::string_view text);

  bool is_leaf() const;
  std::size_t leaf_index() const;
  SetOp op() const;
  const SetExpr& lhs() const;
  const SetExpr& rhs() const;

  /// Leaf indices in left-to-right order.
  std::vector<std::size_t> leaves() const;
  bool uses_only(SetOp op) const;
  bool evaluate(const std::function<bool(std::size_t)>& member) const;

  /// If the tree is the left-deep chain Sigma_1 o Sigma_2 o ... o Sigma_l
  /// with leaves in index order, the operators o_1..o_{l-1}; otherwise nullopt.
  std::optional<std::vector<SetOp>> flat_chain() const;

  std::string to_string() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace propid
