#pragma once

// JSON field accessors shared by the document readers. Errors carry the
// field path.

#include <initializer_list>
#include <string>
#include <string_view>

#include "cineplan/errors.hpp"
#include "json.hpp"

namespace cineplan::detail {

using nlohmann::json;

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
}

inline void check_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  require_object(j, path);
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ValidationError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

inline std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline double number(const json& j, const std::string& path, std::string_view key) {
  const std::string field = join(path, key);
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(field, "missing required number");
  if (!it->is_number()) throw ValidationError(field, "expected a number");
  return it->get<double>();
}

inline std::string text(const json& j, const std::string& path, std::string_view key) {
  const std::string field = join(path, key);
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(field, "missing required string");
  if (!it->is_string()) throw ValidationError(field, "expected a string");
  return it->get<std::string>();
}

inline const json& array(const json& j, const std::string& path, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(join(path, key), "missing required array");
  if (!it->is_array()) throw ValidationError(join(path, key), "expected an array");
  return *it;
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline json parse_json(std::string_view content) {
  try {
    return json::parse(content);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace cineplan::detail
