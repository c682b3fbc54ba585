#include "propid/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "propid/errors.hpp"

namespace propid {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& field(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) fail(ctx + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(ctx + ": missing field '" + key + "'");
  return *it;
}

std::size_t count_field(const json& j, const char* key, const std::string& ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(ctx + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

// JSON floats are taken at their shortest decimal spelling, then read exactly.
Rational scalar(const json& j, const std::string& ctx) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const ParseError& e) {
    fail(ctx + ": " + e.what());
  }
  fail(ctx + ": expected a number or a rational string");
}

Mat any_matrix(const json& j, const std::string& ctx) {
  Mat m;
  if (j.is_string()) {
    try {
      m = parse_matrix(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(ctx + ": " + e.what());
    }
  } else if (j.is_array()) {
    const std::size_t r = j.size();
    const std::size_t c = r ? (j[0].is_array() ? j[0].size() : 0) : 0;
    m = Mat(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (!j[i].is_array() || j[i].size() != c) fail(ctx + ": rows must be arrays of equal length");
      for (std::size_t k = 0; k < c; ++k) m(i, k) = scalar(j[i][k], ctx);
    }
  } else {
    fail(ctx + ": expected a matrix string or an array of rows");
  }
  return m;
}

Mat matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& ctx) {
  const Mat m = any_matrix(j, ctx);
  if (rows == 0 && m.rows() == 0) return Mat(0, cols);
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionMismatch(ctx + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                            ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return m;
}

std::vector<Rational> vector_of(const json& j, const std::string& ctx) {
  std::vector<Rational> out;
  if (j.is_string()) {
    Mat m;
    try {
      m = parse_matrix(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(ctx + ": " + e.what());
    }
    if (m.rows() > 1 && m.cols() > 1) fail(ctx + ": expected a vector");
    return m.values();
  }
  if (!j.is_array()) fail(ctx + ": expected a vector");
  for (const auto& v : j) out.push_back(scalar(v, ctx));
  return out;
}

BoundedSet bounded_set(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.empty()) fail(ctx + ": expected a non-empty list of intervals");
  std::vector<Interval> pieces;
  for (const auto& piece : j) {
    if (piece.is_array()) {
      if (piece.size() != 2) fail(ctx + ": an interval is [lo, hi]");
      pieces.push_back({scalar(piece[0], ctx), scalar(piece[1], ctx)});
    } else {
      const Rational p = scalar(piece, ctx);
      pieces.push_back({p, p});
    }
  }
  return BoundedSet(std::move(pieces));
}

std::vector<std::pair<std::size_t, std::size_t>> index_pairs(const json& j, const std::string& ctx) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (!j.is_array()) fail(ctx + ": expected a list of [row, col] pairs");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
      fail(ctx + ": expected [row, col] with positive integers");
    }
    out.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  }
  return out;
}

json parse_json(std::string_view text, const std::string& ctx) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ctx + ": " + e.what());
  }
}

PropertyDoc property_from(const json& j) {
  const std::string ctx = "property";
  const json& type_field = field(j, "type", ctx);
  if (!type_field.is_string()) fail(ctx + ": 'type' must be a string");
  const std::string type = type_field.get<std::string>();
  const Dims dims{count_field(j, "n", ctx), count_field(j, "m", ctx)};
  PropertySpec spec;
  if (type == "identifiability") {
    spec = Identifiability{};
  } else if (type == "stabilizability") {
    spec = Stabilizability{};
  } else if (type == "controllability") {
    spec = Controllability{};
  } else if (type == "sparsity") {
    Sparsity s;
    if (j.contains("zeros_A")) s.zeros_a = index_pairs(j["zeros_A"], ctx + ".zeros_A");
    if (j.contains("zeros_B")) s.zeros_b = index_pairs(j["zeros_B"], ctx + ".zeros_B");
    spec = std::move(s);
  } else if (type == "linear") {
    std::string mode = "intersection";
    if (j.contains("mode")) {
      if (!j["mode"].is_string()) fail(ctx + ": 'mode' must be a string");
      mode = j["mode"].get<std::string>();
    }
    if (mode != "intersection" && mode != "expression") {
      fail(ctx + ": mode must be 'intersection' or 'expression'");
    }
    const json& list = field(j, "constraints", ctx);
    if (!list.is_array() || list.empty()) fail(ctx + ": 'constraints' must be a non-empty list");
    std::vector<LinearConstraint> constraints;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string c = ctx + ".constraints[" + std::to_string(i + 1) + "]";
      constraints.push_back({vector_of(field(list[i], "h", c), c + ".h"),
                             bounded_set(field(list[i], "set", c), c + ".set")});
    }
    std::optional<SetExpr> expr;
    if (j.contains("expr")) {
      if (!j["expr"].is_string()) fail(ctx + ": 'expr' must be a string");
      expr = SetExpr::parse(j["expr"].get<std::string>());
    } else if (mode == "intersection") {
      expr = SetExpr::chain(SetOp::And, constraints.size());
    } else {
      fail(ctx + ": expression mode needs an 'expr'");
    }
    spec = LinearStructure{std::move(constraints), *expr,
                           mode == "intersection" ? StructureMode::Intersection
                                                  : StructureMode::Expression};
  } else {
    fail(ctx + ": unknown type '" + type + "'");
  }
  validate(spec, dims);
  return {std::move(spec), dims};
}

json rational_json(const Rational& r) { return to_string(r); }

json property_json(const PropertySpec& p, Dims dims) {
  json j;
  j["n"] = dims.n;
  j["m"] = dims.m;
  if (std::holds_alternative<Identifiability>(p)) j["type"] = "identifiability";
  if (std::holds_alternative<Stabilizability>(p)) j["type"] = "stabilizability";
  if (std::holds_alternative<Controllability>(p)) j["type"] = "controllability";
  if (const auto* s = std::get_if<Sparsity>(&p)) {
    j["type"] = "sparsity";
    j["zeros_A"] = json::array();
    j["zeros_B"] = json::array();
    for (const auto& [r, c] : s->zeros_a) j["zeros_A"].push_back({r, c});
    for (const auto& [r, c] : s->zeros_b) j["zeros_B"].push_back({r, c});
  }
  if (const auto* s = std::get_if<LinearStructure>(&p)) {
    j["type"] = "linear";
    j["mode"] = s->mode == StructureMode::Intersection ? "intersection" : "expression";
    j["expr"] = s->expr.to_string();
    j["constraints"] = json::array();
    for (const auto& c : s->constraints) {
      json h = json::array();
      for (const auto& v : c.h) h.push_back(rational_json(v));
      json set = json::array();
      for (const auto& piece : c.set.pieces()) set.push_back({rational_json(piece.lo), rational_json(piece.hi)});
      j["constraints"].push_back({{"h", h}, {"set", set}});
    }
  }
  return j;
}

InputSection section_from(const json& j, const std::string& ctx) {
  const std::size_t n = count_field(j, "n", ctx);
  const std::size_t m = count_field(j, "m", ctx);
  const std::size_t k = count_field(j, "k", ctx);
  return {matrix(field(j, "X", ctx), n, k, ctx + ".X"), matrix(field(j, "U", ctx), m, k, ctx + ".U")};
}

json section_json(const InputSection& s) {
  return {{"n", s.dims().n}, {"m", s.dims().m}, {"k", s.k()},
          {"X", format_matrix(s.x_minus())}, {"U", format_matrix(s.u_minus())}};
}

}  // namespace

PropertyDoc parse_property(std::string_view text) { return property_from(parse_json(text, "property")); }

std::string serialize_property(const PropertySpec& p, Dims dims) { return property_json(p, dims).dump(2); }

InputSection parse_section(std::string_view text) {
  return section_from(parse_json(text, "section"), "section");
}

std::string serialize_section(const InputSection& s) { return section_json(s).dump(2); }

Dataset parse_dataset(std::string_view text) {
  const json j = parse_json(text, "dataset");
  InputSection s = section_from(j, "dataset");
  Mat x_plus = matrix(field(j, "Xplus", "dataset"), s.dims().n, s.k(), "dataset.Xplus");
  return {std::move(s), std::move(x_plus)};
}

std::string serialize_dataset(const Dataset& d) {
  json j = section_json(d.section());
  j["Xplus"] = format_matrix(d.x_plus());
  return j.dump(2);
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const std::string ctx = "scenario";
  const json j = parse_json(text, ctx);
  Scenario sc;
  sc.dims = {count_field(j, "n", ctx), count_field(j, "m", ctx)};
  const json& hidden = field(j, "hidden", ctx);
  sc.hidden = {matrix(field(hidden, "A", ctx + ".hidden"), sc.dims.n, sc.dims.n, ctx + ".hidden.A"),
               matrix(field(hidden, "B", ctx + ".hidden"), sc.dims.n, sc.dims.m, ctx + ".hidden.B")};
  const json& prop = field(j, "property", ctx);
  PropertyDoc doc;
  if (prop.is_string()) {
    doc = load_property(base_dir / prop.get<std::string>());
  } else {
    doc = property_from(prop);
  }
  if (doc.dims != sc.dims) fail(ctx + ": property dimensions differ from the scenario's");
  sc.property = std::move(doc.spec);
  const json& plan = field(j, "plan", ctx);
  if (plan.is_string() && plan.get<std::string>() == "designed") {
    sc.plan = Designed{};
  } else if (plan.is_object() && plan.contains("trajectory")) {
    fail(ctx + ": trajectory plans are not supported; every excitation starts from a reset state");
  } else if (plan.is_object()) {
    const Mat x = any_matrix(field(plan, "X", ctx + ".plan"), ctx + ".plan.X");
    if (x.rows() != sc.dims.n) throw DimensionMismatch(ctx + ".plan.X: expected n rows");
    sc.plan = InputSection(x, matrix(field(plan, "U", ctx + ".plan"), sc.dims.m, x.cols(), ctx + ".plan.U"));
  } else {
    fail(ctx + ": plan must be \"designed\" or {\"X\": ..., \"U\": ...}");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(ctx + ": seed must be a non-negative integer");
    sc.seed = j["seed"].get<std::uint64_t>();
  }
  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  json j;
  j["n"] = sc.dims.n;
  j["m"] = sc.dims.m;
  j["hidden"] = {{"A", format_matrix(sc.hidden.a)}, {"B", format_matrix(sc.hidden.b)}};
  j["property"] = property_json(sc.property, sc.dims);
  if (std::holds_alternative<Designed>(sc.plan)) {
    j["plan"] = "designed";
  } else {
    const auto& s = std::get<InputSection>(sc.plan);
    j["plan"] = {{"X", format_matrix(s.x_minus())}, {"U", format_matrix(s.u_minus())}};
  }
  j["seed"] = sc.seed;
  return j.dump(2);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

PropertyDoc load_property(const std::filesystem::path& path) { return parse_property(read_text_file(path)); }

InputSection load_section(const std::filesystem::path& path) { return parse_section(read_text_file(path)); }

Dataset load_dataset(const std::filesystem::path& path) { return parse_dataset(read_text_file(path)); }

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path());
}

}  // namespace propid
