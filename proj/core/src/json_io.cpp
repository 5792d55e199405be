#include "json_io.hpp"

#include <cstdio>

namespace kcenter::jsonio {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

ordered_json strip_volatile(const ordered_json& doc) {
  if (doc.is_object()) {
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : doc.items()) {
      if (key == "timing" || key == "determinism_hash") continue;
      out[key] = strip_volatile(value);
    }
    return out;
  }
  if (doc.is_array()) {
    ordered_json out = ordered_json::array();
    for (const auto& value : doc) out.push_back(strip_volatile(value));
    return out;
  }
  return doc;
}

std::string finalize_report(ordered_json doc) {
  doc["determinism_hash"] = "fnv1a:" + hex64(fnv1a(strip_volatile(doc).dump()));
  return doc.dump(2) + "\n";
}

}  // namespace kcenter::jsonio
