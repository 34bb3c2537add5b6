#include "hetstab/cycle_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hetstab {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw Error(ErrorKind::ParseError, where + " is missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw Error(ErrorKind::ParseError, where + "." + key + " is not a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& obj, const char* key, const std::string& where,
                                bool required) {
  if (!obj.contains(key)) {
    if (required) throw Error(ErrorKind::ParseError, where + " is missing \"" + key + "\"");
    return {};
  }
  const json& v = obj.at(key);
  if (!v.is_array()) throw Error(ErrorKind::ParseError, where + "." + key + " is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw Error(ErrorKind::ParseError, where + "." + key + " holds a non-number");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

CycleSpec parse_cycle_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level is not an object");
  if (!doc.contains("nodes") || !doc.at("nodes").is_array()) {
    throw Error(ErrorKind::ParseError, "\"nodes\" array is required");
  }
  if (!doc.contains("connections") || !doc.at("connections").is_array()) {
    throw Error(ErrorKind::ParseError, "\"connections\" array is required");
  }

  CycleSpec spec;
  std::size_t j = 0;
  for (const auto& n : doc.at("nodes")) {
    const std::string where = "nodes[" + std::to_string(j++) + "]";
    if (!n.is_object()) throw Error(ErrorKind::ParseError, where + " is not an object");
    NodeSpec node;
    node.contracting = number_field(n, "contracting", where);
    node.expanding = number_field(n, "expanding", where);
    node.transverse = number_list(n, "transverse", where, true);
    node.radial = number_list(n, "radial", where, false);
    spec.nodes.push_back(std::move(node));
  }

  j = 0;
  for (const auto& c : doc.at("connections")) {
    const std::string where = "connections[" + std::to_string(j++) + "]";
    if (!c.is_object()) throw Error(ErrorKind::ParseError, where + " is not an object");
    ConnectionSpec conn;
    if (!c.contains("permutation") || !c.at("permutation").is_array()) {
      throw Error(ErrorKind::ParseError, where + ".permutation array is required");
    }
    for (const auto& p : c.at("permutation")) {
      if (!p.is_number_integer()) {
        throw Error(ErrorKind::ParseError, where + ".permutation holds a non-integer");
      }
      conn.permutation.push_back(p.get<int>());
    }
    conn.scalings = number_list(c, "scalings", where, false);
    if (c.contains("v0")) conn.contraction_offset = number_field(c, "v0", where);
    spec.connections.push_back(std::move(conn));
  }
  return spec;
}

CycleSpec load_cycle_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cycle_spec(buf.str());
}

std::string to_json(const CycleSpec& spec, int indent) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : spec.nodes) {
    json node = {{"contracting", n.contracting},
                 {"expanding", n.expanding},
                 {"transverse", n.transverse}};
    if (!n.radial.empty()) node["radial"] = n.radial;
    doc["nodes"].push_back(std::move(node));
  }
  doc["connections"] = json::array();
  for (const auto& c : spec.connections) {
    json conn = {{"permutation", c.permutation}};
    if (!c.scalings.empty()) conn["scalings"] = c.scalings;
    if (c.contraction_offset != 1.0) conn["v0"] = c.contraction_offset;
    doc["connections"].push_back(std::move(conn));
  }
  return doc.dump(indent);
}

}  // namespace hetstab
