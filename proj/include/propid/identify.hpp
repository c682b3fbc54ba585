#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "propid/errors.hpp"
#include "propid/numerics.hpp"
#include "propid/properties.hpp"
#include "propid/richness.hpp"

namespace propid {

enum class Verdict { HasProperty, LacksProperty };
std::string verdict_name(Verdict v);

/// The data do not pin down (A, B): rank [X-; U-] < n + m.
class NotIdentifiable : public Error {
 public:
  NotIdentifiable(std::size_t rank, std::size_t needed);
  std::size_t deficit() const { return deficit_; }

 private:
  std::size_t deficit_;
};

/// One scalar the identifier inspected: an entry of X+Q or a block trace.
struct Witness {
  std::string label;
  Rational value;
  bool satisfied = false;
};

struct Identification {
  Verdict verdict = Verdict::LacksProperty;
  /// Structure paths: the Q with [X-; U-] Q = target, and X+ Q.
  std::optional<Mat> q;
  std::optional<Mat> x_plus_q;
  std::vector<Witness> witnesses;
  /// Model-recovery paths.
  std::optional<SystemPair> model;
  bool marginal = false;
};

/// A X- + B U- = X+ exactly.
bool consistent_set_contains(const Dataset& d, const SystemPair& sys);

Identification identify_sparsity(const Dataset& d, const Sparsity& p);
Identification identify_linear_structure(const Dataset& d, const LinearStructure& p);
Identification identify_stabilizability(const Dataset& d);
Identification identify_controllability(const Dataset& d);
/// Dispatch on the property kind. Identifiability recovers the model.
Identification identify(const Dataset& d, const PropertySpec& p);

/// Unique [A, B] with [A, B][X-; U-] = X+ when the section is persistently
/// exciting; NotIdentifiable otherwise, InconsistentData if no exact fit.
SystemPair recover_model(const Dataset& d);

struct Gain {
  Mat k;
  Mat closed_loop;
  SpectralRadius radius;
  bool stabilizing = false;  // radius < 1 - kUnitCircleTolerance
};
/// K = U- X-^-1 and A + BK = X+ X-^-1; needs square invertible X-.
Gain gain_from_data(const Dataset& d);

/// rank(X+ - lambda X-).
std::size_t dataset_rank_test(const Dataset& d, const Rational& lambda);

}  // namespace propid
