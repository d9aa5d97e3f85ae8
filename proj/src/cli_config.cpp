// SPDX-License-Identifier: Apache-2.0
#include "seqsense/cli/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "seqsense/errors.hpp"

namespace seqsense::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw config_error(origin + ":" + std::to_string(line_no) +
                           ": unterminated section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) {
        throw config_error(origin + ":" + std::to_string(line_no) + ": empty section name");
      }
      continue;
    }
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw config_error(origin + ":" + std::to_string(line_no) +
                         ": expected key = value, got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw config_error(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (cfg.values_.count(full)) {
      throw config_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                         full + "'");
    }
    cfg.values_[full] = value;
    cfg.lines_[full] = line_no;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               std::optional<std::string> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    if (fallback) return *fallback;
    throw config_error(origin_ + ": missing required key '" + key + "'");
  }
  consumed_.insert(key);
  return it->second;
}

double Config::get_double(const std::string& key, std::optional<double> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const std::string raw = get_string(key);
  try {
    size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) + ": key '" + key +
                       "' is not a number: '" + raw + "'");
  }
}

int Config::get_int(const std::string& key, std::optional<int> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const std::string raw = get_string(key);
  try {
    size_t pos = 0;
    const int v = std::stoi(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) + ": key '" + key +
                       "' is not an integer: '" + raw + "'");
  }
}

bool Config::get_bool(const std::string& key, std::optional<bool> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const std::string raw = get_string(key);
  if (raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "false" || raw == "0" || raw == "no") return false;
  throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) + ": key '" + key +
                     "' is not a boolean: '" + raw + "'");
}

std::vector<double> Config::get_list(const std::string& key,
                                     std::optional<std::vector<double>> fallback) const {
  if (!has(key) && fallback) return *fallback;
  const std::string raw = get_string(key);
  std::vector<double> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(t, &pos));
      if (pos != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) + ": key '" + key +
                         "' has a non-numeric list item: '" + t + "'");
    }
  }
  if (out.empty()) {
    throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) + ": key '" + key +
                       "' must be a nonempty list");
  }
  return out;
}

void Config::reject_unknown_keys() const {
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) {
      throw config_error(origin_ + ":" + std::to_string(lines_.at(key)) +
                         ": unknown key '" + key + "'");
    }
  }
}

}  // namespace seqsense::cli
