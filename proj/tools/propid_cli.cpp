// propid: excitation planning, richness checks and direct property
// identification for discrete-time linear systems x+ = A x + B u.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "propid/adversary.hpp"
#include "propid/errors.hpp"
#include "propid/harness.hpp"
#include "propid/identify.hpp"
#include "propid/io.hpp"
#include "propid/report.hpp"
#include "propid/richness.hpp"

namespace {

using namespace propid;

struct Options {
  std::string format = "text";
  bool verbose = false;
  std::string property;
  std::string input;
  std::string data;
  std::string out;
  std::vector<std::string> scenarios;
  std::uint64_t seed = 0;
};

Format format_of(const Options& o) { return o.format == "csv" ? Format::Csv : Format::Text; }

int emit(const Options& o, const Report& r, int status = 0) {
  std::cout << r.render(format_of(o));
  return status;
}

int cmd_design(const Options& o) {
  const PropertyDoc doc = load_property(o.property);
  const InputSection s = design_minimum_input(doc.spec, doc.dims);
  if (!o.out.empty()) write_text_file(o.out, serialize_section(s));
  Report r;
  r.add("property", property_name(doc.spec));
  r.add("k", std::to_string(s.k()));
  r.add("n+m", std::to_string(doc.dims.total()));
  r.add("X-", s.x_minus());
  r.add("U-", s.u_minus());
  return emit(o, r);
}

int cmd_check(const Options& o) {
  const PropertyDoc doc = load_property(o.property);
  const InputSection s = load_section(o.input);
  if (s.dims() != doc.dims) throw DimensionMismatch("section and property dimensions differ");
  const Subspace need = minimum_subspace(doc.spec, doc.dims);
  const Subspace have = stacked_image(s);
  const bool rich = contains(have, need);
  Report r;
  r.add("property", property_name(doc.spec));
  r.add("sufficiently rich", rich ? "yes" : "no");
  r.add("dim L_P", std::to_string(need.dim()));
  r.add("dim excited", std::to_string(have.dim()));
  if (!rich) r.add("missing directions", missing_directions(have, need));
  return emit(o, r, rich ? 0 : 2);
}

int cmd_identify(const Options& o) {
  const PropertyDoc doc = load_property(o.property);
  const Dataset d = load_dataset(o.data);
  if (d.dims() != doc.dims) throw DimensionMismatch("dataset and property dimensions differ");
  Report r;
  r.add("property", property_name(doc.spec));
  r.append("", describe(identify(d, doc.spec)));
  return emit(o, r);
}

int cmd_recover(const Options& o) {
  const SystemPair sys = recover_model(load_dataset(o.data));
  Report r;
  r.add("A", sys.a);
  r.add("B", sys.b);
  return emit(o, r);
}

int cmd_gain(const Options& o) { return emit(o, describe(gain_from_data(load_dataset(o.data)))); }

int cmd_counterexample(const Options& o) {
  const PropertyDoc doc = load_property(o.property);
  const InputSection s = load_section(o.input);
  if (s.dims() != doc.dims) throw DimensionMismatch("section and property dimensions differ");
  Report r;
  r.add("property", property_name(doc.spec));
  r.append("", describe(counterexample(s, doc.spec, o.seed)));
  return emit(o, r);
}

int cmd_simulate(const Options& o) {
  std::vector<Scenario> batch;
  for (const auto& path : o.scenarios) batch.push_back(load_scenario(path));
  const auto reports = run_batch(batch);
  int status = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Report r;
    r.add("scenario", o.scenarios[i]);
    r.append("", describe(reports[i]));
    if (i) std::cout << "\n";
    std::cout << r.render(format_of(o));
    status = std::max(status, exit_status(reports[i].status));
  }
  return status;
}

int cmd_bench(const Options& o) {
  std::vector<Scenario> batch;
  for (const auto& path : o.scenarios) batch.push_back(load_scenario(path));
  const Table t = efficiency_table(report_efficiency(batch));
  const std::string text = t.render(format_of(o));
  if (!o.out.empty()) write_text_file(o.out, t.render(Format::Csv));
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"propid: minimum excitation and direct property identification"};
  Options o;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "csv"}));
  app.add_flag("--verbose", o.verbose, "report timing on stderr");
  app.require_subcommand(1);

  auto* design = app.add_subcommand("design", "minimum input section for a property");
  design->add_option("--property", o.property)->required();
  design->add_option("--out", o.out, "write the section document here");

  auto* check = app.add_subcommand("check", "is a section sufficiently rich (exit 0) or not (exit 2)");
  check->add_option("--property", o.property)->required();
  check->add_option("--input", o.input)->required();

  auto* ident = app.add_subcommand("identify", "decide a property directly from data");
  ident->add_option("--property", o.property)->required();
  ident->add_option("--data", o.data)->required();

  auto* recover = app.add_subcommand("recover", "recover (A, B) from persistently exciting data");
  recover->add_option("--data", o.data)->required();

  auto* gain = app.add_subcommand("gain", "state feedback K = U- X-^-1 and its closed loop");
  gain->add_option("--data", o.data)->required();

  auto* cex = app.add_subcommand("counterexample", "certify that a section is not sufficiently rich");
  cex->add_option("--property", o.property)->required();
  cex->add_option("--input", o.input)->required();
  cex->add_option("--seed", o.seed);

  auto* simulate = app.add_subcommand("simulate", "run scenario files end to end");
  simulate->add_option("scenarios", o.scenarios)->required();

  auto* bench = app.add_subcommand("bench", "minimum versus model-based excitation counts");
  bench->add_option("scenarios", o.scenarios)->required();
  bench->add_option("--out", o.out, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    if (*design) status = cmd_design(o);
    else if (*check) status = cmd_check(o);
    else if (*ident) status = cmd_identify(o);
    else if (*recover) status = cmd_recover(o);
    else if (*gain) status = cmd_gain(o);
    else if (*cex) status = cmd_counterexample(o);
    else if (*simulate) status = cmd_simulate(o);
    else if (*bench) status = cmd_bench(o);
  } catch (const std::exception& e) {
    std::cerr << "propid: " << e.what() << "\n";
    status = exit_status(classify(e));
  }
  if (o.verbose) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    std::cerr << "propid: " << ms.count() << " ms, exit " << status << "\n";
  }
  return status;
}
