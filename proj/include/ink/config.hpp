#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ink {

/// Flat key/value config: `key = value` lines, quoted or bare values,
/// '#' comments. A deliberate small subset of TOML.
class FlatConfig {
 public:
  static FlatConfig parse(const std::string& text);
  static FlatConfig from_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// "a, b, c" -> trimmed items; empty items dropped.
std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace ink
