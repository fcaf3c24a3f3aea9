#pragma once

#include <map>
#include <string>
#include <vector>

namespace zmlim {

/// Flat `key = value` configuration with `#` comments and dotted keys.
/// Unknown keys are rejected by the typed accessors' owner (the harness);
/// the parser itself records every key it saw.
class KeyValueConfig {
 public:
  static KeyValueConfig parseFile(const std::string& path);
  static KeyValueConfig parseString(const std::string& text);

  bool has(const std::string& key) const;
  std::string getString(const std::string& key, const std::string& fallback) const;
  double getDouble(const std::string& key, double fallback) const;
  int getInt(const std::string& key, int fallback) const;
  bool getBool(const std::string& key, bool fallback) const;
  std::vector<double> getDoubleList(const std::string& key,
                                    const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value);

  /// Keys present in the file but never listed as known.
  std::vector<std::string> unknownKeys(const std::vector<std::string>& known) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace zmlim
