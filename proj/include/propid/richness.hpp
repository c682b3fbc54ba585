#pragma once

#include <cstddef>
#include <functional>

#include "propid/errors.hpp"
#include "propid/numerics.hpp"
#include "propid/properties.hpp"

namespace propid {

/// Excitation plan (X-, U-): column i is one reset-and-apply experiment
/// (x0, u0).
class InputSection {
 public:
  InputSection(Mat x_minus, Mat u_minus);
  /// Splits an (n+m) x k stacked matrix into its state and input rows.
  static InputSection from_stacked(const Mat& stacked, Dims dims);

  const Mat& x_minus() const { return x_minus_; }
  const Mat& u_minus() const { return u_minus_; }
  std::size_t k() const { return x_minus_.cols(); }
  Dims dims() const { return {x_minus_.rows(), u_minus_.rows()}; }
  /// [X-; U-]
  Mat stacked() const { return vstack(x_minus_, u_minus_); }

  friend bool operator==(const InputSection&, const InputSection&) = default;

 private:
  Mat x_minus_;
  Mat u_minus_;
};

/// Section plus the measured one-step responses X+.
class Dataset {
 public:
  Dataset(InputSection section, Mat x_plus);

  const InputSection& section() const { return section_; }
  const Mat& x_plus() const { return x_plus_; }
  Dims dims() const { return section_.dims(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  InputSection section_;
  Mat x_plus_;
};

/// The plan does not span the property's minimum subspace. `missing` holds
/// basis directions of L_P outside the plan's image, one per column.
class NotSufficientlyRich : public Error {
 public:
  NotSufficientlyRich(const std::string& property, Mat missing);
  const Mat& missing() const { return missing_; }

 private:
  Mat missing_;
};

Subspace stacked_image(const InputSection& s);

bool is_sufficiently_rich(const InputSection& s, const PropertySpec& p);
bool is_sufficiently_rich(const Subspace& excited, const PropertySpec& p, Dims dims);
/// Throws NotSufficientlyRich when the check fails.
void require_sufficiently_rich(const InputSection& s, const PropertySpec& p);

/// Section whose stacked columns are exactly `basis`.
InputSection section_from_basis(const Mat& basis, Dims dims);

/// A basis of L_P split into (X-, U-); k = dim L_P.
InputSection design_minimum_input(const PropertySpec& p, Dims dims);

using RichnessOracle = std::function<bool(const Subspace&)>;

/// Drops basis columns of `start` (as given, scanning left to right, repeated
/// until a full pass removes nothing) while the oracle stays true.
Subspace reduce_to_minimum(const Subspace& start, const RichnessOracle& oracle);
/// Same, with the exact containment oracle for p.
Subspace reduce_to_minimum(const Subspace& start, const PropertySpec& p, Dims dims);

}  // namespace propid
