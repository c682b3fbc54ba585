#include "propid/report.hpp"

#include <algorithm>
#include <cstdio>

#include "propid/errors.hpp"

namespace propid {

void Report::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add(std::string key, const Mat& m) { add(std::move(key), format_matrix(m)); }

void Report::append(const std::string& prefix, const Report& other) {
  for (const auto& [k, v] : other.entries_) add(prefix + k, v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n;") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Report::render(Format f) const {
  std::string out;
  if (f == Format::Csv) {
    out = "key,value\n";
    for (const auto& [k, v] : entries_) out += csv_field(k) + "," + csv_field(v) + "\n";
    return out;
  }
  std::size_t width = 0;
  for (const auto& e : entries_) width = std::max(width, e.first.size());
  for (const auto& [k, v] : entries_) out += k + std::string(width - k.size(), ' ') + "  " + v + "\n";
  return out;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw InternalFault("table row width differs from header");
  rows_.push_back(std::move(row));
}

std::string Table::render(Format f) const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells, const std::vector<std::size_t>& widths) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (f == Format::Csv) {
        out += (i ? "," : "") + csv_field(cells[i]);
      } else {
        out += cells[i];
        if (i + 1 < cells.size()) out += std::string(widths[i] - cells[i].size() + 2, ' ');
      }
    }
    out += "\n";
  };
  std::vector<std::size_t> widths(header_.size());
  for (std::size_t i = 0; i < header_.size(); ++i) {
    widths[i] = header_[i].size();
    for (const auto& r : rows_) widths[i] = std::max(widths[i], r[i].size());
  }
  line(header_, widths);
  for (const auto& r : rows_) line(r, widths);
  return out;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Verdict: return "verdict";
    case RunStatus::NotSufficientlyRich: return "not-sufficiently-rich";
    case RunStatus::MalformedInput: return "malformed-input";
    case RunStatus::InternalFault: return "internal-fault";
  }
  return "internal-fault";
}

}  // namespace

Report describe(const Identification& id) {
  Report r;
  r.add("verdict", verdict_name(id.verdict));
  if (id.q) r.add("Q", *id.q);
  if (id.x_plus_q) r.add("X+Q", *id.x_plus_q);
  for (const auto& w : id.witnesses) {
    r.add("check " + w.label, to_string(w.value) + (w.satisfied ? " (ok)" : " (violated)"));
  }
  if (id.model) {
    r.add("A", id.model->a);
    r.add("B", id.model->b);
  }
  if (id.marginal) r.add("marginal", "eigenvalue within 1e-9 of the unit circle");
  return r;
}

Report describe(const CounterexamplePair& pair) {
  Report r;
  r.add("with.A", pair.sys_with.a);
  r.add("with.B", pair.sys_with.b);
  r.add("without.A", pair.sys_without.a);
  r.add("without.B", pair.sys_without.b);
  r.add("X-", pair.section.x_minus());
  r.add("U-", pair.section.u_minus());
  r.add("shared X+", pair.shared_feedback);
  if (pair.seed) r.add("seed", std::to_string(*pair.seed));
  for (std::size_t i = 0; i < pair.transcript.size(); ++i) {
    r.add("step " + std::to_string(i + 1), pair.transcript[i]);
  }
  return r;
}

Report describe(const Gain& g) {
  Report r;
  r.add("K", g.k);
  r.add("closed loop", g.closed_loop);
  r.add("spectral radius", fixed(g.radius.value, 12));
  r.add("residual", fixed(g.radius.residual, 3));
  r.add("stabilizing", g.stabilizing ? "yes" : "no");
  if (g.radius.marginal) r.add("marginal", "yes");
  return r;
}

Report describe(const RunReport& rep) {
  Report r;
  r.add("property", rep.property);
  r.add("n", std::to_string(rep.dims.n));
  r.add("m", std::to_string(rep.dims.m));
  r.add("status", status_name(rep.status));
  if (!rep.message.empty()) r.add("message", rep.message);
  r.add("k used", std::to_string(rep.k_used));
  r.add("k model-based", std::to_string(rep.k_model_based));
  if (rep.dataset) {
    r.add("X-", rep.dataset->section().x_minus());
    r.add("U-", rep.dataset->section().u_minus());
    r.add("X+", rep.dataset->x_plus());
  }
  if (rep.identification) r.append("", describe(*rep.identification));
  if (rep.missing) r.add("missing directions", *rep.missing);
  if (rep.counterexample) r.append("counterexample.", describe(*rep.counterexample));
  return r;
}

Table efficiency_table(const std::vector<EfficiencyRow>& rows) {
  Table t({"property", "n", "m", "dim L_P", "n+m", "savings"});
  for (const auto& row : rows) {
    t.add_row({row.property, std::to_string(row.dims.n), std::to_string(row.dims.m),
               std::to_string(row.k_minimum), std::to_string(row.k_model_based),
               fixed(row.savings, 3)});
  }
  return t;
}

}  // namespace propid
