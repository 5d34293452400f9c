#include "cineplan/mission_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cineplan/errors.hpp"
#include "json.hpp"
#include "json_fields.hpp"

namespace cineplan {

using nlohmann::json;

namespace {

using namespace detail;

Waypoint parse_waypoint(const json& j, const std::string& path) {
  check_keys(j, path, {"x", "y", "z", "t"});
  return {{number(j, path, "x"), number(j, path, "y"), number(j, path, "z")}, number(j, path, "t")};
}

std::vector<Waypoint> parse_waypoints(const json& arr, const std::string& path) {
  std::vector<Waypoint> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_waypoint(arr[i], at(path, i)));
  return out;
}

Vec2 parse_xy(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(path, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

MapSpec parse_map(const json& j, const std::string& path) {
  check_keys(j, path, {"origin", "cell_size", "width", "height", "no_fly_zones"});
  MapSpec map;
  auto origin = j.find("origin");
  if (origin == j.end()) throw ValidationError(join(path, "origin"), "missing origin");
  map.origin = parse_xy(*origin, join(path, "origin"));
  map.cell_size = number(j, path, "cell_size");
  const double w = number(j, path, "width");
  const double h = number(j, path, "height");
  if (w != static_cast<int>(w) || h != static_cast<int>(h))
    throw ValidationError(path, "width and height must be integers");
  map.width = static_cast<int>(w);
  map.height = static_cast<int>(h);
  if (j.contains("no_fly_zones")) {
    const json& zones = array(j, path, "no_fly_zones");
    for (std::size_t i = 0; i < zones.size(); ++i) {
      const std::string zpath = at(join(path, "no_fly_zones"), i);
      if (!zones[i].is_array() || zones[i].size() < 3)
        throw ValidationError(zpath, "a polygon needs at least three vertices");
      std::vector<Vec2> poly;
      for (std::size_t k = 0; k < zones[i].size(); ++k) poly.push_back(parse_xy(zones[i][k], at(zpath, k)));
      map.no_fly_zones.push_back(std::move(poly));
    }
  }
  return map;
}

json waypoint_json(const Waypoint& w) {
  return json{{"x", w.position.x}, {"y", w.position.y}, {"z", w.position.z}, {"t", w.time}};
}

}  // namespace

Mission load_mission(std::string_view content) {
  const json doc = parse_json(content);
  check_keys(doc, "", {"epoch", "tasks", "base_stations", "uavs", "map"});

  Mission mission;
  if (doc.contains("epoch")) mission.epoch = number(doc, "", "epoch");

  const json& tasks = array(doc, "", "tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string path = at("tasks", i);
    check_keys(tasks[i], path, {"id", "shot_type", "waypoints"});
    ShootingTask task;
    task.id = text(tasks[i], path, "id");
    const std::string shot = text(tasks[i], path, "shot_type");
    auto type = parse_shot_type(shot);
    if (!type) throw ValidationError(path + ".shot_type", "unknown shot type '" + shot + "'");
    task.shot_type = *type;
    task.waypoints = parse_waypoints(array(tasks[i], path, "waypoints"), path + ".waypoints");
    mission.tasks.push_back(std::move(task));
  }

  const json& stations = array(doc, "", "base_stations");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const std::string path = at("base_stations", i);
    check_keys(stations[i], path, {"id", "trajectory", "recharge_delay"});
    BaseStation bs;
    bs.id = text(stations[i], path, "id");
    bs.trajectory = parse_waypoints(array(stations[i], path, "trajectory"), path + ".trajectory");
    if (stations[i].contains("recharge_delay")) bs.recharge_delay = number(stations[i], path, "recharge_delay");
    mission.base_stations.push_back(std::move(bs));
  }

  const json& uavs = array(doc, "", "uavs");
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    const std::string path = at("uavs", i);
    check_keys(uavs[i], path, {"id", "battery_endurance", "cruise_speed", "initial_state"});
    UavSpec uav;
    uav.id = text(uavs[i], path, "id");
    uav.battery_endurance = number(uavs[i], path, "battery_endurance");
    uav.cruise_speed = number(uavs[i], path, "cruise_speed");
    if (uavs[i].contains("initial_state")) {
      const std::string spath = path + ".initial_state";
      const json& s = uavs[i]["initial_state"];
      check_keys(s, spath, {"x", "y", "z", "t", "battery"});
      uav.initial_state = UavState{uav.id,
                                   {number(s, spath, "x"), number(s, spath, "y"), number(s, spath, "z")},
                                   number(s, spath, "t"),
                                   number(s, spath, "battery")};
    }
    mission.uavs.push_back(std::move(uav));
  }

  if (doc.contains("map")) mission.map = parse_map(doc["map"], "map");

  validate_mission(mission);
  return mission;
}

Mission load_mission_file(const std::filesystem::path& path) { return load_mission(read_text_file(path)); }

MapSpec load_map(std::string_view content) { return parse_map(parse_json(content), "map"); }

std::string save_mission(const Mission& mission) {
  json doc;
  doc["epoch"] = mission.epoch;
  doc["tasks"] = json::array();
  for (const auto& task : mission.tasks) {
    json t{{"id", task.id}, {"shot_type", std::string(to_string(task.shot_type))}, {"waypoints", json::array()}};
    for (const auto& w : task.waypoints) t["waypoints"].push_back(waypoint_json(w));
    doc["tasks"].push_back(std::move(t));
  }
  doc["base_stations"] = json::array();
  for (const auto& bs : mission.base_stations) {
    json b{{"id", bs.id}, {"trajectory", json::array()}, {"recharge_delay", bs.recharge_delay}};
    for (const auto& w : bs.trajectory) b["trajectory"].push_back(waypoint_json(w));
    doc["base_stations"].push_back(std::move(b));
  }
  doc["uavs"] = json::array();
  for (const auto& uav : mission.uavs) {
    json u{{"id", uav.id}, {"battery_endurance", uav.battery_endurance}, {"cruise_speed", uav.cruise_speed}};
    if (uav.initial_state) {
      const auto& s = *uav.initial_state;
      u["initial_state"] = {{"x", s.position.x}, {"y", s.position.y}, {"z", s.position.z},
                            {"t", s.clock},      {"battery", s.battery_remaining}};
    }
    doc["uavs"].push_back(std::move(u));
  }
  if (mission.map) {
    const auto& m = *mission.map;
    json zones = json::array();
    for (const auto& poly : m.no_fly_zones) {
      json p = json::array();
      for (const auto& v : poly) p.push_back({v.x, v.y});
      zones.push_back(std::move(p));
    }
    doc["map"] = {{"origin", {m.origin.x, m.origin.y}},
                  {"cell_size", m.cell_size},
                  {"width", m.width},
                  {"height", m.height},
                  {"no_fly_zones", std::move(zones)}};
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace cineplan
