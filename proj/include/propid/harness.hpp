#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propid/adversary.hpp"
#include "propid/identify.hpp"
#include "propid/properties.hpp"
#include "propid/richness.hpp"

namespace propid {

/// x+ = A* x0 + B* u0 for every column: one step from a reset state.
Dataset excite(const SystemPair& hidden, const InputSection& s);

struct Designed {
  friend bool operator==(const Designed&, const Designed&) = default;
};
using Plan = std::variant<Designed, InputSection>;

struct Scenario {
  Dims dims;
  SystemPair hidden;
  PropertySpec property;
  Plan plan = Designed{};
  std::uint64_t seed = 0;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class RunStatus {
  Verdict,              // exit 0
  NotSufficientlyRich,  // exit 2: also not identifiable / formula not applicable
  MalformedInput,       // exit 3
  InternalFault,        // exit 4
};
int exit_status(RunStatus s);
RunStatus classify(const std::exception& e);

struct RunReport {
  std::string property;
  Dims dims;
  RunStatus status = RunStatus::Verdict;
  std::string message;
  std::optional<Dataset> dataset;
  std::optional<Identification> identification;
  /// Directions of L_P the plan missed, when deficient.
  std::optional<Mat> missing;
  std::optional<CounterexamplePair> counterexample;
  std::size_t k_used = 0;
  std::size_t k_model_based = 0;
};

/// Plan, excite the hidden system, identify. Explicit deficient plans get a
/// counterexample pair instead of a verdict. Errors are captured in the
/// report, never thrown.
RunReport run(const Scenario& sc);
/// Scenarios run concurrently; results keep the input order.
std::vector<RunReport> run_batch(const std::vector<Scenario>& batch);

struct EfficiencyRow {
  std::string property;
  Dims dims;
  std::size_t k_minimum = 0;      // dim L_P
  std::size_t k_model_based = 0;  // n + m
  double savings = 0.0;           // 1 - k_minimum / k_model_based
};
std::vector<EfficiencyRow> report_efficiency(const std::vector<Scenario>& batch);

}  // namespace propid
