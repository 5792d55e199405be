#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kcenter/metric.hpp"

namespace kcenter {

// Points file: CSV with one point per row. Either coordinate rows
// `x1,x2,...,xd` (all rows the same width) or a distance matrix introduced
// by a `matrix,n` header and followed by n rows of n entries. Blank lines
// and lines starting with '#' are skipped. Row order defines the default
// phi: row i has rank i+1.
MetricInstance parse_instance(const std::string& text, const ValidationPolicy& policy = {});
MetricInstance load_instance(const std::string& path, const ValidationPolicy& policy = {});

std::string format_instance(const MetricInstance& instance);
void write_instance(const MetricInstance& instance, const std::string& path);

// Partition file: whitespace- or comma-separated machine ids (1-based), one
// per point in id order.
std::vector<std::uint32_t> parse_partition(const std::string& text, std::size_t n,
                                           std::uint32_t machines);
std::vector<std::uint32_t> load_partition(const std::string& path, std::size_t n,
                                          std::uint32_t machines);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trippable decimal form of a double.
std::string format_double(double value);

}  // namespace kcenter
