#pragma once

#include <string>
#include <utility>
#include <vector>

#include "propid/adversary.hpp"
#include "propid/harness.hpp"
#include "propid/identify.hpp"
#include "propid/numerics.hpp"

namespace propid {

enum class Format { Text, Csv };

/// Ordered key/value lines. Text output aligns the keys; CSV output is a
/// two-column `key,value` file with RFC 4180 quoting.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, const Mat& m);
  void append(const std::string& prefix, const Report& other);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::string render(Format f) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::string render(Format f) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_field(const std::string& s);

Report describe(const Identification& id);
Report describe(const CounterexamplePair& pair);
Report describe(const Gain& g);
Report describe(const RunReport& r);
Table efficiency_table(const std::vector<EfficiencyRow>& rows);

}  // namespace propid
