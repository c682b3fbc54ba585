#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "propid/numerics.hpp"
#include "propid/properties.hpp"
#include "propid/richness.hpp"

namespace propid {

/// Two systems reproducing the same feedback on `section`; only `sys_with`
/// has the property.
struct CounterexamplePair {
  SystemPair sys_with;
  SystemPair sys_without;
  InputSection section;
  Mat shared_feedback;
  std::vector<std::string> transcript;
  std::optional<std::uint64_t> seed;
};

/// Nonzero h with h' [X-; U-] = 0: the first kernel vector of the transposed
/// stacked matrix. nullopt iff the section is persistently exciting.
std::optional<Mat> find_annihilator(const InputSection& s);

CounterexamplePair counterexample_stabilizability(const InputSection& s);
CounterexamplePair counterexample_controllability(const InputSection& s);

enum class SignChoice { Keep, Complement };

/// Choice per constraint (index 0 is Sigma_1) for the left-deep chain
/// Sigma_1 o_1 Sigma_2 ... with operators `ops` (o_1..o_{l-1}).
std::vector<SignChoice> chain_signs(const std::vector<SetOp>& ops,
                                         const std::set<std::size_t>& c1);
/// Choice per constraint for an arbitrarily bracketed expression.
std::vector<SignChoice> tree_signs(const SetExpr& expr, const std::set<std::size_t>& c1);

CounterexamplePair counterexample_structure(const InputSection& s, const LinearStructure& p,
                                            std::uint64_t seed = 0);
CounterexamplePair counterexample_structure(const InputSection& s, const Sparsity& p,
                                            std::uint64_t seed = 0);

/// Dispatch on the property kind. Identifiability has no property split and
/// is rejected with InvalidSpec.
CounterexamplePair counterexample(const InputSection& s, const PropertySpec& p,
                                  std::uint64_t seed = 0);

struct PairCheck {
  bool with_consistent = false;
  bool without_consistent = false;
  bool with_has = false;
  bool without_has = true;
  bool ok() const { return with_consistent && without_consistent && with_has && !without_has; }
};
/// Re-checks a pair against the exact consistency test and the oracles.
PairCheck verify_counterexample(const CounterexamplePair& pair, const PropertySpec& p);

}  // namespace propid
