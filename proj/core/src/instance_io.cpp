#include "kcenter/instance_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace kcenter {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::string format_double(double value) {
  char buffer[64];
  // Lowest of the standard precisions that round-trips.
  for (int precision : {15, 16, 17}) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

namespace {

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& token, std::size_t row) {
  errno = 0;
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end != begin + token.size() && (*end == ' ' || *end == '\t')) ++end;
  const char* lead = begin;
  while (*lead == ' ' || *lead == '\t') ++lead;
  if (end == lead || end != begin + token.size() || errno == ERANGE) {
    throw Error(ErrorCode::ParseError,
                "row " + std::to_string(row + 1) + ": bad number '" + token + "'");
  }
  return value;
}

bool is_matrix_header(const std::vector<std::string>& fields) {
  if (fields.empty()) return false;
  std::string head = fields[0];
  const auto start = head.find_first_not_of(" \t");
  const auto stop = head.find_last_not_of(" \t");
  if (start == std::string::npos) return false;
  return head.substr(start, stop - start + 1) == "matrix";
}

}  // namespace

MetricInstance parse_instance(const std::string& text, const ValidationPolicy& policy) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "no data rows");

  const auto head = split_csv(lines[0]);
  if (is_matrix_header(head)) {
    if (head.size() != 2) throw Error(ErrorCode::ParseError, "matrix header must be 'matrix,n'");
    const long n_raw = std::strtol(head[1].c_str(), nullptr, 10);
    if (n_raw <= 0) throw Error(ErrorCode::ParseError, "matrix header must be 'matrix,n'");
    const auto n = static_cast<std::uint32_t>(n_raw);
    if (lines.size() != static_cast<std::size_t>(n) + 1) {
      throw Error(ErrorCode::ParseError, "matrix of size " + std::to_string(n) + " needs " +
                                             std::to_string(n) + " rows, got " +
                                             std::to_string(lines.size() - 1));
    }
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto fields = split_csv(lines[i + 1]);
      if (fields.size() != n) {
        throw Error(ErrorCode::ParseError, "row " + std::to_string(i + 2) + ": expected " +
                                               std::to_string(n) + " entries, got " +
                                               std::to_string(fields.size()));
      }
      for (const auto& field : fields) entries.push_back(parse_number(field, i + 1));
    }
    return MetricInstance::from_matrix(std::move(entries), n, policy);
  }

  const auto dimension = static_cast<std::uint32_t>(head.size());
  std::vector<double> coords;
  coords.reserve(lines.size() * dimension);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    if (fields.size() != dimension) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                      " coordinates, expected " + std::to_string(dimension));
    }
    for (const auto& field : fields) coords.push_back(parse_number(field, i));
  }
  return MetricInstance::from_coordinates(std::move(coords), dimension, policy);
}

MetricInstance load_instance(const std::string& path, const ValidationPolicy& policy) {
  return parse_instance(read_text_file(path), policy);
}

std::string format_instance(const MetricInstance& instance) {
  std::ostringstream out;
  if (instance.kind() == MetricKind::Matrix) {
    const auto n = instance.size();
    out << "matrix," << n << "\n";
    const auto& m = instance.raw_matrix();
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        if (j) out << ",";
        out << format_double(m[static_cast<std::size_t>(i) * n + j]);
      }
      out << "\n";
    }
  } else {
    const auto n = instance.size();
    const auto d = instance.dimension();
    const auto& coords = instance.raw_coordinates();
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        if (j) out << ",";
        out << format_double(coords[static_cast<std::size_t>(i) * d + j]);
      }
      out << "\n";
    }
  }
  return out.str();
}

void write_instance(const MetricInstance& instance, const std::string& path) {
  write_text_file(path, format_instance(instance));
}

std::vector<std::uint32_t> parse_partition(const std::string& text, std::size_t n,
                                           std::uint32_t machines) {
  std::string normalized = text;
  for (auto& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream in(normalized);
  std::vector<std::uint32_t> assignment;
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size() || errno == ERANGE) {
      throw Error(ErrorCode::ParseError, "bad machine id '" + token + "'");
    }
    if (value < 1 || static_cast<std::uint32_t>(value) > machines) {
      throw Error(ErrorCode::InvalidParams,
                  "machine id " + token + " outside 1.." + std::to_string(machines));
    }
    assignment.push_back(static_cast<std::uint32_t>(value));
  }
  if (assignment.size() != n) {
    throw Error(ErrorCode::InvalidParams, "partition lists " + std::to_string(assignment.size()) +
                                              " points, instance has " + std::to_string(n));
  }
  return assignment;
}

std::vector<std::uint32_t> load_partition(const std::string& path, std::size_t n,
                                          std::uint32_t machines) {
  return parse_partition(read_text_file(path), n, machines);
}

}  // namespace kcenter
