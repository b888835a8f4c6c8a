#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "roelab/experiments.hpp"
#include "roelab/models.hpp"

namespace roelab {

/// Sectioned key-value configuration ([section] / key = value). Unknown
/// sections or keys are rejected against the schema of the subcommand.
class IniConfig {
 public:
  static IniConfig parse_file(const std::string& path);
  static IniConfig parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const;
  std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                const std::vector<int>& fallback) const;
  std::vector<std::uint64_t> get_u64_list(const std::string& section, const std::string& key)
      const;
  std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

  /// Throws Error(config) naming the first key not covered by the schema.
  void validate(const std::map<std::string, std::set<std::string>>& schema) const;

  const std::string& text() const { return text_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string text_;
};

/// [model] + [disorder] sections shared by the subcommands.
ModelSpec model_from_config(const IniConfig& cfg);
DisorderSpec disorder_from_config(const IniConfig& cfg);
PairingExperimentConfig pairing_from_config(const IniConfig& cfg);

extern const std::set<std::string> kModelKeys;
extern const std::set<std::string> kDisorderKeys;
extern const std::set<std::string> kPairingKeys;
extern const std::set<std::string> kOutputKeys;

}  // namespace roelab
