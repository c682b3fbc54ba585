#include "propid/richness.hpp"

#include <vector>

namespace propid {

InputSection::InputSection(Mat x_minus, Mat u_minus)
    : x_minus_(std::move(x_minus)), u_minus_(std::move(u_minus)) {
  if (x_minus_.cols() != u_minus_.cols()) {
    throw DimensionMismatch("X- has " + std::to_string(x_minus_.cols()) + " columns but U- has " +
                            std::to_string(u_minus_.cols()));
  }
  if (x_minus_.cols() == 0) throw DimensionMismatch("an input section needs k >= 1 columns");
  if (x_minus_.rows() == 0) throw DimensionMismatch("X- needs n >= 1 rows");
}

InputSection InputSection::from_stacked(const Mat& stacked, Dims dims) {
  if (stacked.rows() != dims.total()) {
    throw DimensionMismatch("stacked section has " + std::to_string(stacked.rows()) +
                            " rows, expected n+m = " + std::to_string(dims.total()));
  }
  return {stacked.block(0, 0, dims.n, stacked.cols()),
          stacked.block(dims.n, 0, dims.m, stacked.cols())};
}

Dataset::Dataset(InputSection section, Mat x_plus)
    : section_(std::move(section)), x_plus_(std::move(x_plus)) {
  if (x_plus_.rows() != section_.dims().n || x_plus_.cols() != section_.k()) {
    throw DimensionMismatch("X+ must be " + std::to_string(section_.dims().n) + "x" +
                            std::to_string(section_.k()));
  }
}

namespace {

std::string describe_missing(const std::string& property, const Mat& missing) {
  std::string out = "section is not sufficiently rich for " + property + "; missing directions:";
  for (std::size_t c = 0; c < missing.cols(); ++c) out += " [" + format_matrix(missing.col(c).transpose()) + "]";
  return out;
}

}  // namespace

NotSufficientlyRich::NotSufficientlyRich(const std::string& property, Mat missing)
    : Error(describe_missing(property, missing)), missing_(std::move(missing)) {}

Subspace stacked_image(const InputSection& s) { return image(s.stacked()); }

bool is_sufficiently_rich(const Subspace& excited, const PropertySpec& p, Dims dims) {
  if (excited.ambient_dim() != dims.total()) {
    throw DimensionMismatch("excited subspace lives in R^" + std::to_string(excited.ambient_dim()) +
                            ", expected R^" + std::to_string(dims.total()));
  }
  return contains(excited, minimum_subspace(p, dims));
}

bool is_sufficiently_rich(const InputSection& s, const PropertySpec& p) {
  return is_sufficiently_rich(stacked_image(s), p, s.dims());
}

void require_sufficiently_rich(const InputSection& s, const PropertySpec& p) {
  const Subspace need = minimum_subspace(p, s.dims());
  const Subspace have = stacked_image(s);
  if (!contains(have, need)) throw NotSufficientlyRich(property_name(p), missing_directions(have, need));
}

InputSection section_from_basis(const Mat& basis, Dims dims) {
  return InputSection::from_stacked(basis, dims);
}

InputSection design_minimum_input(const PropertySpec& p, Dims dims) {
  return section_from_basis(minimum_subspace(p, dims).basis(), dims);
}

Subspace reduce_to_minimum(const Subspace& start, const RichnessOracle& oracle) {
  if (!oracle(start)) throw InvalidSpec("reduce_to_minimum: the starting subspace fails the oracle");
  Mat basis = start.basis();
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      std::vector<std::size_t> keep;
      for (std::size_t j = 0; j < basis.cols(); ++j)
        if (j != c) keep.push_back(j);
      const Mat candidate = basis.select_cols(keep);
      const Subspace smaller =
          candidate.cols() == 0 ? Subspace::zero(start.ambient_dim()) : Subspace::span(candidate);
      if (oracle(smaller)) {
        basis = candidate;
        removed = true;
        --c;  // the next column slid into position c
      }
    }
  }
  return basis.cols() == 0 ? Subspace::zero(start.ambient_dim()) : Subspace::span(basis);
}

Subspace reduce_to_minimum(const Subspace& start, const PropertySpec& p, Dims dims) {
  const Subspace need = minimum_subspace(p, dims);
  return reduce_to_minimum(start, [&](const Subspace& s) { return contains(s, need); });
}

}  // namespace propid
