#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "propid/harness.hpp"
#include "propid/properties.hpp"
#include "propid/richness.hpp"

// JSON documents. Matrices are strings in the literal format ("1,0;0,1") or
// arrays of rows; scalars are strings ("1/2", "-0.25") or JSON numbers, read
// exactly from their decimal text. Every malformed document raises ParseError
// or InvalidSpec.
namespace propid {

struct PropertyDoc {
  PropertySpec spec;
  Dims dims;
  friend bool operator==(const PropertyDoc&, const PropertyDoc&) = default;
};

PropertyDoc parse_property(std::string_view json);
std::string serialize_property(const PropertySpec& p, Dims dims);

InputSection parse_section(std::string_view json);
std::string serialize_section(const InputSection& s);

Dataset parse_dataset(std::string_view json);
std::string serialize_dataset(const Dataset& d);

/// `property` may be an inline object or a path, resolved against base_dir.
Scenario parse_scenario(std::string_view json, const std::filesystem::path& base_dir = {});
/// Always writes the property inline.
std::string serialize_scenario(const Scenario& sc);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

PropertyDoc load_property(const std::filesystem::path& path);
InputSection load_section(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace propid
