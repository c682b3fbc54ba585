#include <filesystem>

#include <gtest/gtest.h>

#include "propid/errors.hpp"
#include "propid/io.hpp"
#include "support.hpp"

using namespace propid;
using namespace propid::testing;

namespace fs = std::filesystem;

TEST(PropertyJson, ParsesEachKind) {
  EXPECT_EQ(parse_property(R"({"type":"stabilizability","n":2,"m":1})"),
            (PropertyDoc{Stabilizability{}, {2, 1}}));
  const PropertyDoc sp = parse_property(R"({"type":"sparsity","n":2,"m":1,"zeros_A":[[1,1]],"zeros_B":[[2,1]]})");
  EXPECT_EQ(sp.spec, PropertySpec(two_state_sparsity()));
  const PropertyDoc lin = parse_property(
      R"({"type":"linear","n":2,"m":0,"constraints":[{"h":"1,0,0,1","set":[0]},{"h":[1,0,1,0],"set":[[-1,"1/2"]]}]})");
  const auto& s = std::get<LinearStructure>(lin.spec);
  EXPECT_EQ(s.mode, StructureMode::Intersection);
  EXPECT_EQ(s.expr, SetExpr::chain(SetOp::And, 2));
  EXPECT_EQ(s.constraints[1].set.pieces()[0].hi, q(1, 2));
}

TEST(PropertyJson, RoundTrip) {
  Rng rng(81);
  for (int t = 0; t < 100; ++t) {
    const Dims dims = random_dims(rng);
    const SystemPair sys = random_system(rng, dims);
    PropertySpec p;
    switch (rng.integer(0, 3)) {
      case 0: p = Controllability{}; break;
      case 1: p = random_sparsity(rng, dims); break;
      case 2: p = random_structure(rng, dims, sys, StructureMode::Intersection, 2); break;
      default: p = random_structure(rng, dims, sys, StructureMode::Expression, 3); break;
    }
    EXPECT_EQ(parse_property(serialize_property(p, dims)), (PropertyDoc{p, dims}));
  }
}

TEST(PropertyJson, Rejections) {
  EXPECT_THROW(parse_property("{"), ParseError);
  EXPECT_THROW(parse_property(R"({"type":"magic","n":1,"m":1})"), ParseError);
  EXPECT_THROW(parse_property(R"({"type":"sparsity","n":2,"m":1,"zeros_A":[[3,1]]})"), InvalidSpec);
  EXPECT_THROW(parse_property(R"({"type":"linear","n":1,"m":1,"mode":"expression",
                                 "constraints":[{"h":[1,0],"set":[0]}]})"),
               ParseError);  // expression mode needs expr
  EXPECT_THROW(parse_property(R"({"type":"linear","n":1,"m":0,"constraints":[{"h":[0],"set":[0]}]})"), InvalidSpec);
}

TEST(PropertyJson, ScalarsAreExact) {
  const PropertyDoc d = parse_property(
      R"({"type":"linear","n":1,"m":0,"constraints":[{"h":[0.1],"set":[[-2.5e-1, 1e1]]}]})");
  const auto& c = std::get<LinearStructure>(d.spec).constraints[0];
  EXPECT_EQ(c.h[0], q(1, 10));
  EXPECT_EQ(c.set.pieces()[0].lo, q(-1, 4));
  EXPECT_EQ(c.set.pieces()[0].hi, q(10));
}

TEST(SectionJson, RoundTripAndShapes) {
  const InputSection s = gain_section();
  EXPECT_EQ(parse_section(serialize_section(s)), s);
  EXPECT_EQ(parse_section(R"({"n":2,"m":1,"k":2,"X":[[1,0],[0,0]],"U":"0,1"})"), two_state_section());
  const InputSection auto_sys = parse_section(R"({"n":1,"m":0,"k":2,"X":"1,2","U":""})");
  EXPECT_EQ(auto_sys.u_minus().rows(), 0u);
  EXPECT_THROW(parse_section(R"({"n":2,"m":1,"k":3,"X":"1,0;0,1","U":"1,1"})"), DimensionMismatch);
  EXPECT_THROW(parse_section(R"({"n":2,"m":1,"k":2,"X":"1,0;0,1"})"), ParseError);
}

TEST(DatasetJson, RoundTrip) {
  const Dataset d(gain_section(), gain_stable_feedback());
  const Dataset back = parse_dataset(serialize_dataset(d));
  EXPECT_EQ(back.section(), d.section());
  EXPECT_EQ(back.x_plus(), d.x_plus());
}

TEST(ScenarioJson, RoundTrip) {
  const Scenario designed{{2, 1}, two_state_system(), two_state_sparsity(), Designed{}, 5};
  EXPECT_EQ(parse_scenario(serialize_scenario(designed)), designed);
  const Scenario explicit_plan{{2, 1}, two_state_system(), Stabilizability{}, gain_section(), 0};
  EXPECT_EQ(parse_scenario(serialize_scenario(explicit_plan)), explicit_plan);
}

TEST(ScenarioJson, TrajectoryPlansAreRejected) {
  EXPECT_THROW(parse_scenario(R"({"n":1,"m":1,"hidden":{"A":"1","B":"1"},
                                  "property":{"type":"controllability","n":1,"m":1},
                                  "plan":{"trajectory":"1,2,3"}})"),
               ParseError);
}

TEST(ScenarioJson, PropertyPathResolvesAgainstBaseDir) {
  const fs::path dir = fs::temp_directory_path() / "propid_io_test";
  fs::create_directories(dir);
  write_text_file(dir / "p.json", serialize_property(two_state_sparsity(), {2, 1}));
  const std::string text = R"({"n":2,"m":1,"hidden":{"A":"0,1;2,1","B":"1;0"},"property":"p.json","plan":"designed"})";
  write_text_file(dir / "s.json", text);
  const Scenario sc = load_scenario(dir / "s.json");
  EXPECT_EQ(sc.property, PropertySpec(two_state_sparsity()));
  EXPECT_EQ(sc.hidden, two_state_system());
  EXPECT_THROW(parse_scenario(text, dir / "missing"), ParseError);
  EXPECT_THROW(load_section(dir / "nope.json"), ParseError);
  fs::remove_all(dir);
}
