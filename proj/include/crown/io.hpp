#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crown/geometry.hpp"
#include "crown/hier.hpp"
#include "crown/triangulation.hpp"

namespace crown {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent input.
class InputError : public CrownError {
 public:
  using CrownError::CrownError;
};

// Two-space indentation and a trailing newline.
std::string dump(const Json& doc);
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

// Rationals accept "p/q" strings, decimal strings and JSON integers.
Rational rational_from_json(const Json& value, const std::string& what);

Json box_to_json(const BoxSpec& box);
BoxSpec box_from_json(const Json& value);
std::vector<BoxSpec> boxes_from_json(const Json& value);

struct LayoutDocument {
  Layout layout;
  Rational realized_profit;
  Rational total_profit;
};

LayoutDocument make_document(const Layout& layout, const ProfitGraph& graph);

// {"boxes":[{"id","w","h","x","y"[,"label"]}], "contacts":[{"a","b","orientation","degenerate"}],
//  "realized_profit", "total_profit"}
Json layout_to_json(const LayoutDocument& doc);
// Contacts are recomputed and must agree with the listed ones.
LayoutDocument layout_from_json(const Json& value);

// {"boxes":[...], "edges":[{"a","b","profit"}], optional "witness": layout}
struct ProfitInstance {
  std::vector<BoxSpec> boxes;
  ProfitGraph graph;
  std::optional<Layout> witness;
};

Json instance_to_json(const ProfitInstance& inst);
ProfitInstance instance_from_json(const Json& value);

// {"boxes":[...], "edges":[["child","parent"],...], "rotation":{"v":[...]}}
struct HierInstance {
  std::vector<BoxSpec> boxes;
  EmbeddedDag dag;
};

Json hier_to_json(const HierInstance& inst);
HierInstance hier_from_json(const Json& value);

// {"boxes":[...], "rotation":{"v":[...]}, "outer":{"N","E","S","W"}}
Json triangulation_to_json(const TriangulationInstance& inst);
TriangulationInstance triangulation_from_json(const Json& value);

}  // namespace crown
