// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace seqsense::cli {

// Flat key-value config with [section] headers, strictly parsed: unknown keys
// and malformed lines raise config_error naming the key and line number.
// Keys are addressed as "section.key" ("" section for the preamble).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, std::optional<std::string> fallback = {}) const;
  double get_double(const std::string& key, std::optional<double> fallback = {}) const;
  int get_int(const std::string& key, std::optional<int> fallback = {}) const;
  bool get_bool(const std::string& key, std::optional<bool> fallback = {}) const;
  // Comma-separated list of numbers.
  std::vector<double> get_list(const std::string& key,
                               std::optional<std::vector<double>> fallback = {}) const;

  // After reading, every present key must have been consumed.
  void reject_unknown_keys() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  mutable std::set<std::string> consumed_;
  std::string origin_;
};

}  // namespace seqsense::cli
