#include "parafoil/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace parafoil {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

const json& require_object(const json& parent, const char* key, const std::string& where) {
  if (!parent.contains(key)) throw ConfigError(where + ": missing required field '" + key + "'");
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(where + "." + key + ": expected an object");
  return v;
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing required field '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

Box3 parse_box(const json& obj, const std::string& where) {
  return {number(obj, "x_lo", where), number(obj, "x_hi", where), number(obj, "y_lo", where),
          number(obj, "y_hi", where), number(obj, "h_lo", where), number(obj, "h_hi", where)};
}

json box_json(const Box3& b) {
  return {{"x_lo", b.x_lo}, {"x_hi", b.x_hi}, {"y_lo", b.y_lo}, {"y_hi", b.y_hi}, {"h_lo", b.h_lo}, {"h_hi", b.h_hi}};
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario: top level must be an object");
  reject_unknown(doc, "scenario",
                 {"description", "initial", "params", "wind", "bounds", "obstacles", "goal", "approach_threshold_h",
                  "control_bound", "safety_radius"});

  Scenario s;
  const json& initial = require_object(doc, "initial", "scenario");
  reject_unknown(initial, "initial", {"x", "y", "h", "psi"});
  s.initial = {number(initial, "x", "initial"), number(initial, "y", "initial"), number(initial, "h", "initial"),
               number(initial, "psi", "initial")};

  const json& params = require_object(doc, "params", "scenario");
  reject_unknown(params, "params", {"speed", "glide_ratio", "g"});
  s.params = {number(params, "speed", "params"), number(params, "glide_ratio", "params"),
              number_or(params, "g", 9.81, "params")};

  const json& wind = require_object(doc, "wind", "scenario");
  reject_unknown(wind, "wind", {"wx", "wy", "wh"});
  s.wind = {number(wind, "wx", "wind"), number(wind, "wy", "wind"), number_or(wind, "wh", 0.0, "wind")};

  const json& bounds = require_object(doc, "bounds", "scenario");
  reject_unknown(bounds, "bounds", {"x_min", "x_max", "y_min", "y_max", "h_min", "h_max"});
  s.bounds = {number(bounds, "x_min", "bounds"), number(bounds, "x_max", "bounds"),
              number(bounds, "y_min", "bounds"), number(bounds, "y_max", "bounds"),
              number(bounds, "h_min", "bounds"), number(bounds, "h_max", "bounds")};

  if (doc.contains("obstacles")) {
    const json& obstacles = doc.at("obstacles");
    if (!obstacles.is_array()) throw ConfigError("scenario.obstacles: expected an array");
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      const std::string where = "obstacles[" + std::to_string(i) + "]";
      const json& o = obstacles[i];
      if (!o.is_object()) throw ConfigError(where + ": expected an object");
      reject_unknown(o, where, {"label", "x_lo", "x_hi", "y_lo", "y_hi", "h_lo", "h_hi"});
      PrismObstacle obstacle{parse_box(o, where), ""};
      if (o.contains("label")) {
        if (!o.at("label").is_string()) throw ConfigError(where + ".label: expected a string");
        obstacle.label = o.at("label").get<std::string>();
      }
      s.obstacles.push_back(std::move(obstacle));
    }
  }

  const json& goal = require_object(doc, "goal", "scenario");
  reject_unknown(goal, "goal", {"x_lo", "x_hi", "y_lo", "y_hi", "h_lo", "h_hi"});
  s.goal.box = parse_box(goal, "goal");

  s.approach_threshold_h = number_or(doc, "approach_threshold_h", 160.0, "scenario");
  s.control_bound = number_or(doc, "control_bound", kMaxBank, "scenario");
  s.safety_radius = number_or(doc, "safety_radius", 0.0, "scenario");
  if (doc.contains("description") && !doc.at("description").is_string())
    throw ConfigError("scenario.description: expected a string");

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s, const std::string& description) {
  json doc;
  if (!description.empty()) doc["description"] = description;
  doc["initial"] = {{"x", s.initial.x}, {"y", s.initial.y}, {"h", s.initial.h}, {"psi", s.initial.psi}};
  doc["params"] = {{"speed", s.params.speed}, {"glide_ratio", s.params.glide_ratio}, {"g", s.params.g}};
  doc["wind"] = {{"wx", s.wind.wx}, {"wy", s.wind.wy}, {"wh", s.wind.wh}};
  doc["bounds"] = {{"x_min", s.bounds.x_min}, {"x_max", s.bounds.x_max}, {"y_min", s.bounds.y_min},
                   {"y_max", s.bounds.y_max}, {"h_min", s.bounds.h_min}, {"h_max", s.bounds.h_max}};
  doc["obstacles"] = json::array();
  for (const auto& o : s.obstacles) {
    json entry = box_json(o.extent);
    entry["label"] = o.label;
    doc["obstacles"].push_back(entry);
  }
  doc["goal"] = box_json(s.goal.box);
  doc["approach_threshold_h"] = s.approach_threshold_h;
  doc["control_bound"] = s.control_bound;
  doc["safety_radius"] = s.safety_radius;
  return doc.dump(2) + "\n";
}

}  // namespace parafoil
