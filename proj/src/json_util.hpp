#pragma once

// Typed accessors over nlohmann::ordered_json that raise ValidationError with
// a dotted location on every failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ztrust/error.hpp"

namespace ztrust::json_util {

using Json = nlohmann::ordered_json;

inline std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("document", std::string("syntax error: ") + e.what());
  }
}

inline void require_schema(const Json& doc, const std::string& expected) {
  if (!doc.is_object()) throw ValidationError("document", "top level must be an object");
  auto it = doc.find("schema");
  if (it == doc.end()) throw ValidationError("schema", "missing schema version (expected \"" + expected + "\")");
  if (!it->is_string() || it->get<std::string>() != expected)
    throw ValidationError("schema", "unsupported schema " + it->dump() + " (expected \"" + expected + "\")");
}

inline const Json& member(const Json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) throw ValidationError(loc, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(join(loc, key), "missing required key");
  return *it;
}

inline const Json* optional_member(const Json& obj, const std::string& key, const std::string& loc) {
  if (!obj.is_object()) throw ValidationError(loc, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline const Json& as_object(const Json& j, const std::string& loc) {
  if (!j.is_object()) throw ValidationError(loc, "expected an object");
  return j;
}

inline const Json& as_array(const Json& j, const std::string& loc) {
  if (!j.is_array()) throw ValidationError(loc, "expected an array");
  return j;
}

inline double as_number(const Json& j, const std::string& loc) {
  if (!j.is_number()) throw ValidationError(loc, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(loc, "number is not finite");
  return v;
}

inline std::string as_string(const Json& j, const std::string& loc) {
  if (!j.is_string()) throw ValidationError(loc, "expected a string");
  return j.get<std::string>();
}

inline bool as_bool(const Json& j, const std::string& loc) {
  if (!j.is_boolean()) throw ValidationError(loc, "expected true or false");
  return j.get<bool>();
}

inline std::int64_t as_integer(const Json& j, const std::string& loc) {
  if (!j.is_number_integer()) throw ValidationError(loc, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::uint64_t as_unsigned(const Json& j, const std::string& loc) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ValidationError(loc, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

// Non-empty list of unique strings.
inline std::vector<std::string> label_list(const Json& j, const std::string& loc) {
  as_array(j, loc);
  if (j.empty()) throw ValidationError(loc, "list must not be empty");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto s = as_string(j[i], loc + "[" + std::to_string(i) + "]");
    if (!seen.insert(s).second) throw ValidationError(loc, "duplicate label '" + s + "'");
    out.push_back(std::move(s));
  }
  return out;
}

// Object whose keys must be exactly `labels`.
inline void require_keys(const Json& obj, const std::vector<std::string>& labels, const std::string& loc) {
  as_object(obj, loc);
  for (const auto& [key, _] : obj.items()) {
    if (std::find(labels.begin(), labels.end(), key) == labels.end())
      throw ValidationError(join(loc, key), "unknown label");
  }
  for (const auto& l : labels)
    if (!obj.contains(l)) throw ValidationError(join(loc, l), "missing entry");
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace ztrust::json_util
