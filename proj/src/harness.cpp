#include "propid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "propid/errors.hpp"

namespace propid {

Dataset excite(const SystemPair& hidden, const InputSection& s) {
  if (hidden.dims() != s.dims() || !hidden.a.square()) {
    throw DimensionMismatch("hidden system and input section dimensions differ");
  }
  return {s, hidden.a * s.x_minus() + hidden.b * s.u_minus()};
}

int exit_status(RunStatus s) {
  switch (s) {
    case RunStatus::Verdict: return 0;
    case RunStatus::NotSufficientlyRich: return 2;
    case RunStatus::MalformedInput: return 3;
    case RunStatus::InternalFault: return 4;
  }
  return 4;
}

RunStatus classify(const std::exception& e) {
  if (dynamic_cast<const NotSufficientlyRich*>(&e) || dynamic_cast<const NotIdentifiable*>(&e) ||
      dynamic_cast<const NotApplicable*>(&e) || dynamic_cast<const SectionIsRich*>(&e)) {
    return RunStatus::NotSufficientlyRich;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidSpec*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const InconsistentData*>(&e) ||
      dynamic_cast<const InfeasibleSigns*>(&e)) {
    return RunStatus::MalformedInput;
  }
  return RunStatus::InternalFault;
}

RunReport run(const Scenario& sc) {
  RunReport report;
  report.property = property_name(sc.property);
  report.dims = sc.dims;
  report.k_model_based = sc.dims.total();
  try {
    if (sc.hidden.dims() != sc.dims || !sc.hidden.a.square()) {
      throw DimensionMismatch("hidden system does not match the scenario dimensions");
    }
    validate(sc.property, sc.dims);
    const InputSection section = std::holds_alternative<Designed>(sc.plan)
                                     ? design_minimum_input(sc.property, sc.dims)
                                     : std::get<InputSection>(sc.plan);
    if (section.dims() != sc.dims) throw DimensionMismatch("plan does not match the scenario dimensions");
    report.k_used = section.k();
    report.dataset = excite(sc.hidden, section);
    try {
      report.identification = identify(*report.dataset, sc.property);
    } catch (const NotSufficientlyRich& e) {
      report.status = RunStatus::NotSufficientlyRich;
      report.message = e.what();
      report.missing = e.missing();
      if (!std::holds_alternative<Identifiability>(sc.property)) {
        report.counterexample = counterexample(section, sc.property, sc.seed);
      }
    }
  } catch (const std::exception& e) {
    report.status = classify(e);
    report.message = e.what();
  }
  return report;
}

std::vector<RunReport> run_batch(const std::vector<Scenario>& batch) {
  std::vector<RunReport> out(batch.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < batch.size(); i = next++) out[i] = run(batch[i]);
  };
  const std::size_t threads =
      std::min<std::size_t>(batch.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pending;
  for (std::size_t t = 0; t < threads; ++t) pending.push_back(std::async(std::launch::async, worker));
  for (auto& f : pending) f.get();
  return out;
}

std::vector<EfficiencyRow> report_efficiency(const std::vector<Scenario>& batch) {
  std::vector<EfficiencyRow> rows;
  for (const auto& sc : batch) {
    EfficiencyRow row;
    row.property = property_name(sc.property);
    row.dims = sc.dims;
    row.k_minimum = minimum_subspace(sc.property, sc.dims).dim();
    row.k_model_based = sc.dims.total();
    row.savings = 1.0 - static_cast<double>(row.k_minimum) / static_cast<double>(row.k_model_based);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace propid
