#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "packclass/model.hpp"
#include "packclass/opp.hpp"

namespace packclass::cli {

using Json = nlohmann::ordered_json;

// Contents of an InstanceFile before container checks. `container` is absent
// when the file leaves it out (allowed for strip packing input).
struct InstanceData {
  std::size_t d = 0;
  std::optional<std::vector<Rational>> container;
  std::vector<Box> boxes;
};

// Parse errors throw Error(kParse) with "source:line:col: message".
Json parse_json(std::string_view text, const std::string& source);
InstanceData parse_instance(std::string_view text, const std::string& source);

// Positions from a ResultFile or a bare {"positions": ...} document.
Packing parse_packing(std::string_view text, const std::string& source);

// Class from a document with a "class" member: d arrays of [id, id] pairs.
PackingClass parse_class(std::string_view text, const std::string& source,
                         const std::vector<std::string>& ids);

struct LoadedInstance {
  Instance instance;
  std::vector<std::string> warnings;
};

// Builds the Instance; with `drop_oversized` boxes that do not fit are removed
// with a warning instead of rejected.
LoadedInstance make_instance(const InstanceData& data, std::vector<Rational> container,
                             bool drop_oversized);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Json rational_json(const Rational& r);
Json instance_json(const InstanceData& data);
Json packing_json(const Packing& p);
Json class_json(const PackingClass& cls);
Json stats_json(const SearchStats& stats);

}  // namespace packclass::cli
