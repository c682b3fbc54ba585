#include <gtest/gtest.h>

#include "propid/errors.hpp"
#include "propid/richness.hpp"
#include "support.hpp"

using namespace propid;
using namespace propid::testing;

namespace {

std::vector<PropertySpec> catalog(Rng& rng, Dims dims) {
  std::vector<PropertySpec> out{Identifiability{}, Stabilizability{}, Controllability{},
                                random_sparsity(rng, dims)};
  const SystemPair ref = random_system(rng, dims);
  out.push_back(random_structure(rng, dims, ref, StructureMode::Intersection, rng.index(1, 3)));
  out.push_back(random_structure(rng, dims, ref, StructureMode::Expression, rng.index(1, 3)));
  return out;
}

InputSection drop_column(const InputSection& s, std::size_t c) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < s.k(); ++j)
    if (j != c) keep.push_back(j);
  return InputSection::from_stacked(s.stacked().select_cols(keep), s.dims());
}

}  // namespace

TEST(InputSection, Validation) {
  EXPECT_THROW(InputSection(mat("1,0;0,1"), mat("1")), DimensionMismatch);
  EXPECT_THROW(InputSection(Mat(2, 0), Mat(1, 0)), DimensionMismatch);
  const InputSection s = two_state_section();
  EXPECT_EQ(s.k(), 2u);
  EXPECT_EQ(s.dims(), (Dims{2, 1}));
  EXPECT_EQ(s.stacked(), mat("1,0;0,0;0,1"));
  EXPECT_THROW(Dataset(s, mat("1;2")), DimensionMismatch);
}

TEST(StackedImage, Examples) {
  const Subspace ex1 = stacked_image(gain_section());
  EXPECT_EQ(ex1.dim(), 2u);
  EXPECT_EQ(ex1.ambient_dim(), 3u);
  EXPECT_EQ(stacked_image(InputSection(Mat::identity(2), Mat(1, 2))).dim(), 2u);
  EXPECT_EQ(stacked_image(InputSection::from_stacked(Mat::identity(3), {2, 1})), Subspace::full(3));
  EXPECT_EQ(stacked_image(InputSection(Mat(2, 3), Mat(1, 3))).dim(), 0u);
}

TEST(IsSufficientlyRich, Examples) {
  EXPECT_FALSE(is_sufficiently_rich(gain_section(), Stabilizability{}));
  EXPECT_TRUE(is_sufficiently_rich(InputSection(Mat(1, 3), Mat::identity(3)), Controllability{}));
  EXPECT_TRUE(is_sufficiently_rich(two_state_section(), two_state_sparsity()));
  EXPECT_FALSE(is_sufficiently_rich(InputSection(mat("1;0"), mat("0")), two_state_sparsity()));
}

TEST(RequireSufficientlyRich, ReportsMissingDirections) {
  try {
    require_sufficiently_rich(InputSection(mat("1;0"), mat("0")), two_state_sparsity());
    FAIL() << "expected NotSufficientlyRich";
  } catch (const NotSufficientlyRich& e) {
    EXPECT_EQ(e.missing(), Mat::unit(3, 2));
  }
}

TEST(Design, Examples) {
  const InputSection stab = design_minimum_input(Stabilizability{}, {2, 1});
  EXPECT_EQ(stab.k(), 3u);
  EXPECT_EQ(stab.stacked(), Mat::identity(3));
  const InputSection ctrl = design_minimum_input(Controllability{}, {1, 2});
  EXPECT_EQ(ctrl.x_minus(), mat("0,0"));
  EXPECT_EQ(ctrl.u_minus(), Mat::identity(2));
  const InputSection ex7 = design_minimum_input(two_state_sparsity(), {2, 1});
  EXPECT_EQ(ex7, two_state_section());
}

TEST(Design, LinearStructureUsesPivotColumnsOfM) {
  // a11 + a12 = 0 on an autonomous 2-state system: M = [[1,0],[1,0]].
  const auto p = single_constraint({1, 0, 1, 0}, BoundedSet::point(0));
  const InputSection s = design_minimum_input(p, {2, 0});
  EXPECT_EQ(s.x_minus(), mat("1;1"));
  EXPECT_EQ(s.u_minus().rows(), 0u);
}

TEST(Design, RichAndMinimalAcrossCatalog) {
  Rng rng(31);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (const auto& p : catalog(rng, {n, m})) {
        const InputSection s = design_minimum_input(p, {n, m});
        EXPECT_TRUE(is_sufficiently_rich(s, p));
        EXPECT_EQ(s.k(), minimum_subspace(p, {n, m}).dim());
        if (n + m > 5) continue;
        for (std::size_t c = 0; c < s.k() && s.k() > 1; ++c)
          EXPECT_FALSE(is_sufficiently_rich(drop_column(s, c), p)) << property_name(p);
      }
    }
  }
}

TEST(IsSufficientlyRich, MonotoneUnderAppendedColumns) {
  Rng rng(32);
  for (int t = 0; t < 150; ++t) {
    const Dims dims = random_dims(rng);
    const auto props = catalog(rng, dims);
    const PropertySpec& p = props[rng.index(0, props.size() - 1)];
    const InputSection s = InputSection::from_stacked(rng.matrix(dims.total(), rng.index(1, 4), 1, 1), dims);
    const InputSection more = InputSection::from_stacked(hstack(s.stacked(), rng.matrix(dims.total(), 2)), dims);
    if (is_sufficiently_rich(s, p)) {
      EXPECT_TRUE(is_sufficiently_rich(more, p));
    }
  }
}

TEST(IsSufficientlyRich, InvariantUnderInvertibleMixing) {
  Rng rng(33);
  for (int t = 0; t < 150; ++t) {
    const Dims dims = random_dims(rng);
    const auto props = catalog(rng, dims);
    const PropertySpec& p = props[rng.index(0, props.size() - 1)];
    const InputSection s = rng.coin() ? random_rich_section(rng, p, dims, rng.index(0, 2))
                                      : random_deficient_section(rng, p, dims);
    const InputSection mixed = InputSection::from_stacked(s.stacked() * rng.invertible(s.k()), dims);
    EXPECT_EQ(is_sufficiently_rich(s, p), is_sufficiently_rich(mixed, p));
  }
}

TEST(ReduceToMinimum, Examples) {
  EXPECT_EQ(reduce_to_minimum(Subspace::full(3), two_state_sparsity(), {2, 1}),
            Subspace::span(hstack(Mat::unit(3, 0), Mat::unit(3, 2))));
  const Subspace lp = minimum_subspace(two_state_sparsity(), {2, 1});
  EXPECT_EQ(reduce_to_minimum(lp, two_state_sparsity(), {2, 1}), lp);
  const auto trace = single_constraint({1, 0, 0, 1}, BoundedSet::point(0));
  EXPECT_EQ(reduce_to_minimum(Subspace::full(2), trace, {2, 0}), Subspace::full(2));
  EXPECT_THROW(reduce_to_minimum(Subspace::span(Mat::unit(3, 0)), two_state_sparsity(), {2, 1}), InvalidSpec);
}

TEST(ReduceToMinimum, RecoversMinimumFromShuffledExtendedBasis) {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const Dims dims = random_dims(rng);
    const auto props = catalog(rng, dims);
    const PropertySpec& p = props[rng.index(0, props.size() - 1)];
    const Subspace lp = minimum_subspace(p, dims);
    Mat basis = lp.basis();
    while (basis.cols() < dims.total()) {
      const Mat cand = hstack(basis, rng.matrix(dims.total(), 1));
      if (rank(cand) == cand.cols()) basis = cand;
    }
    std::vector<std::size_t> order(basis.cols());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng.engine());
    const Subspace start = Subspace::span(basis.select_cols(order));
    EXPECT_EQ(reduce_to_minimum(start, p, dims), lp);
  }
}

TEST(ReduceToMinimum, CustomOracle) {
  // keep anything containing e1 + e2
  const Mat target = mat("1;1;0");
  const Subspace out = reduce_to_minimum(
      Subspace::span(mat("1,0,0;0,1,0;0,0,1")), [&](const Subspace& s) { return contains(s, target); });
  EXPECT_EQ(out.dim(), 2u);  // no single basis vector of {e1, e2} can go
  EXPECT_TRUE(contains(out, target));
}
