#include "crown/io.hpp"

#include <fstream>
#include <sstream>

namespace crown {
namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + " is missing \"" + key + "\"");
  return *it;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw InputError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

std::map<BoxId, std::vector<BoxId>> rotation_from_json(const Json& value) {
  if (!value.is_object()) throw InputError("rotation must be an object");
  std::map<BoxId, std::vector<BoxId>> out;
  for (auto it = value.begin(); it != value.end(); ++it) {
    if (!it.value().is_array()) throw InputError("rotation of " + it.key() + " must be an array");
    std::vector<BoxId> ids;
    for (const auto& v : it.value()) {
      if (!v.is_string()) throw InputError("rotation of " + it.key() + " must list ids");
      ids.push_back(v.get<std::string>());
    }
    out[it.key()] = std::move(ids);
  }
  return out;
}

Json rotation_to_json(const std::map<BoxId, std::vector<BoxId>>& rotation) {
  Json out = Json::object();
  for (const auto& [v, ids] : rotation) out[v] = ids;
  return out;
}

Json boxes_to_json(const std::vector<BoxSpec>& boxes) {
  Json out = Json::array();
  for (const auto& b : boxes) out.push_back(box_to_json(b));
  return out;
}

}  // namespace

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Rational rational_from_json(const Json& value, const std::string& what) {
  try {
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
  throw InputError(what + " must be a rational string or an integer");
}

Json box_to_json(const BoxSpec& box) {
  Json out = {{"id", box.id}, {"w", to_string(box.width)}, {"h", to_string(box.height)}};
  if (!box.label.empty()) out["label"] = box.label;
  return out;
}

BoxSpec box_from_json(const Json& value) {
  BoxSpec box;
  box.id = string_field(value, "id", "box");
  const std::string where = "box " + box.id;
  box.width = rational_from_json(field(value, "w", where), where + ".w");
  box.height = rational_from_json(field(value, "h", where), where + ".h");
  if (value.contains("label")) box.label = string_field(value, "label", where);
  return box;
}

std::vector<BoxSpec> boxes_from_json(const Json& value) {
  if (!value.is_array()) throw InputError("boxes must be an array");
  std::vector<BoxSpec> out;
  for (const auto& v : value) out.push_back(box_from_json(v));
  try {
    validate_boxes(out);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const DuplicateIdError& e) {
    throw InputError(e.what());
  }
  return out;
}

LayoutDocument make_document(const Layout& layout, const ProfitGraph& graph) {
  return {layout, realized_profit(layout, graph), graph.total_profit()};
}

Json layout_to_json(const LayoutDocument& doc) {
  Json boxes = Json::array();
  for (const auto& [id, pb] : doc.layout) {
    Json b = {{"id", id},
              {"w", to_string(pb.spec.width)},
              {"h", to_string(pb.spec.height)},
              {"x", to_string(pb.x)},
              {"y", to_string(pb.y)}};
    if (!pb.spec.label.empty()) b["label"] = pb.spec.label;
    boxes.push_back(std::move(b));
  }
  Json contacts = Json::array();
  for (const auto& c : detect_contacts(doc.layout)) {
    contacts.push_back({{"a", c.a},
                        {"b", c.b},
                        {"orientation", c.orientation == Orientation::Horizontal ? "h" : "v"},
                        {"degenerate", c.degenerate}});
  }
  return {{"boxes", std::move(boxes)},
          {"contacts", std::move(contacts)},
          {"realized_profit", to_string(doc.realized_profit)},
          {"total_profit", to_string(doc.total_profit)}};
}

LayoutDocument layout_from_json(const Json& value) {
  LayoutDocument doc;
  const Json& boxes = field(value, "boxes", "layout");
  if (!boxes.is_array()) throw InputError("layout.boxes must be an array");
  for (const auto& b : boxes) {
    BoxSpec spec = box_from_json(b);
    const std::string where = "box " + spec.id;
    if (spec.width <= 0 || spec.height <= 0) throw InputError(where + " has a non-positive dimension");
    Rational x = rational_from_json(field(b, "x", where), where + ".x");
    Rational y = rational_from_json(field(b, "y", where), where + ".y");
    try {
      doc.layout.place(spec, x, y);
    } catch (const DuplicateIdError& e) {
      throw InputError(e.what());
    }
  }
  std::vector<Contact> contacts;
  try {
    contacts = detect_contacts(doc.layout);
  } catch (const OverlapError& e) {
    throw InputError(e.what());
  }
  if (value.contains("contacts")) {
    const Json& listed = value["contacts"];
    if (!listed.is_array() || listed.size() != contacts.size()) throw InputError("contacts do not match the boxes");
    for (std::size_t i = 0; i < contacts.size(); ++i) {
      const Json& c = listed[i];
      std::string o = contacts[i].orientation == Orientation::Horizontal ? "h" : "v";
      if (string_field(c, "a", "contact") != contacts[i].a || string_field(c, "b", "contact") != contacts[i].b ||
          string_field(c, "orientation", "contact") != o || !field(c, "degenerate", "contact").is_boolean() ||
          c["degenerate"].get<bool>() != contacts[i].degenerate) {
        throw InputError("contact " + std::to_string(i) + " does not match the boxes");
      }
    }
  }
  doc.realized_profit =
      value.contains("realized_profit") ? rational_from_json(value["realized_profit"], "realized_profit") : Rational(0);
  doc.total_profit =
      value.contains("total_profit") ? rational_from_json(value["total_profit"], "total_profit") : Rational(0);
  return doc;
}

Json instance_to_json(const ProfitInstance& inst) {
  Json edges = Json::array();
  for (const auto& e : inst.graph.edges()) edges.push_back({{"a", e.a}, {"b", e.b}, {"profit", to_string(e.profit)}});
  Json out = {{"boxes", boxes_to_json(inst.boxes)}, {"edges", std::move(edges)}};
  if (inst.witness) out["witness"] = layout_to_json(make_document(*inst.witness, inst.graph));
  return out;
}

ProfitInstance instance_from_json(const Json& value) {
  ProfitInstance inst;
  inst.boxes = boxes_from_json(field(value, "boxes", "instance"));
  std::set<BoxId> ids;
  for (const auto& b : inst.boxes) {
    ids.insert(b.id);
    inst.graph.add_vertex(b.id);
  }
  const Json& edges = field(value, "edges", "instance");
  if (!edges.is_array()) throw InputError("instance.edges must be an array");
  for (const auto& e : edges) {
    std::string a, b;
    Rational p = 1;
    if (e.is_array()) {
      if (e.size() < 2 || e.size() > 3 || !e[0].is_string() || !e[1].is_string()) {
        throw InputError("edge arrays are [a, b] or [a, b, profit]");
      }
      a = e[0].get<std::string>();
      b = e[1].get<std::string>();
      if (e.size() == 3) p = rational_from_json(e[2], "edge profit");
    } else {
      a = string_field(e, "a", "edge");
      b = string_field(e, "b", "edge");
      if (e.contains("profit")) p = rational_from_json(e["profit"], "edge profit");
    }
    if (!ids.count(a) || !ids.count(b)) throw InputError("edge " + a + "-" + b + " names an unknown box");
    if (inst.graph.has_edge(a, b)) throw InputError("duplicate edge " + a + "-" + b);
    try {
      inst.graph.set_profit(a, b, p);
    } catch (const std::invalid_argument& err) {
      throw InputError(err.what());
    }
  }
  if (value.contains("witness")) inst.witness = layout_from_json(value["witness"]).layout;
  return inst;
}

Json hier_to_json(const HierInstance& inst) {
  Json edges = Json::array();
  for (const auto& [u, v] : inst.dag.edges) edges.push_back(Json::array({u, v}));
  return {{"boxes", boxes_to_json(inst.boxes)}, {"edges", std::move(edges)},
          {"rotation", rotation_to_json(inst.dag.rotation)}};
}

HierInstance hier_from_json(const Json& value) {
  HierInstance inst;
  inst.boxes = boxes_from_json(field(value, "boxes", "dag"));
  for (const auto& b : inst.boxes) inst.dag.vertices.push_back(b.id);
  const Json& edges = field(value, "edges", "dag");
  if (!edges.is_array()) throw InputError("dag.edges must be an array");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InputError("dag edges are [child, parent] pairs");
    }
    inst.dag.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  inst.dag.rotation = rotation_from_json(field(value, "rotation", "dag"));
  return inst;
}

Json triangulation_to_json(const TriangulationInstance& inst) {
  return {{"boxes", boxes_to_json(inst.boxes)},
          {"rotation", rotation_to_json(inst.rotation)},
          {"outer", {{"N", inst.north}, {"E", inst.east}, {"S", inst.south}, {"W", inst.west}}}};
}

TriangulationInstance triangulation_from_json(const Json& value) {
  TriangulationInstance inst;
  inst.boxes = boxes_from_json(field(value, "boxes", "triangulation"));
  inst.rotation = rotation_from_json(field(value, "rotation", "triangulation"));
  const Json& outer = field(value, "outer", "triangulation");
  inst.north = string_field(outer, "N", "outer");
  inst.east = string_field(outer, "E", "outer");
  inst.south = string_field(outer, "S", "outer");
  inst.west = string_field(outer, "W", "outer");
  return inst;
}

}  // namespace crown
