#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

// Report plumbing shared by experiment.cpp and the CLI. Private to the
// build: the installed headers must not drag the vendored json along.
namespace kcenter::jsonio {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t value);

// Copy with every "timing" subtree removed, recursively, plus the top-level
// hash field itself. What remains is the deterministic content.
ordered_json strip_volatile(const ordered_json& doc);

// Stamps doc["determinism_hash"] from the stripped dump and pretty-prints.
std::string finalize_report(ordered_json doc);

}  // namespace kcenter::jsonio
