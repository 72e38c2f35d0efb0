// core/include/fsde/config.hpp

// Copyright 2026  fsde contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef FSDE_CONFIG_HPP_
#define FSDE_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fsde/nets.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"
#include "fsde/trainer.hpp"

namespace fsde {

// Flat key=value configuration with dotted namespaces (trainer.lr,
// loss.lambda1, ...).  '#' starts a comment; later assignments win, so a
// file can be layered under command-line overrides.  Getters throw with the
// offending key on malformed values.
class Config {
 public:
  static Config FromFile(const std::string& path);
  static Config FromString(const std::string& text);

  void Set(const std::string& key, const std::string& value);
  void SetKv(const std::string& kv);  // "key=value"
  void Merge(const Config& other);    // other's values win

  bool Has(const std::string& key) const;
  std::string GetString(const std::string& key, const std::string& def) const;
  double GetDouble(const std::string& key, double def) const;
  int GetInt(const std::string& key, int def) const;
  uint64_t GetUint64(const std::string& key, uint64_t def) const;
  bool GetBool(const std::string& key, bool def) const;
  // Comma-separated lists; empty value -> empty list.
  std::vector<std::string> GetList(const std::string& key,
                                   const std::string& def) const;
  std::vector<uint64_t> GetUint64List(const std::string& key,
                                      const std::string& def) const;

  std::vector<std::string> Keys() const;  // sorted
  std::string Serialize() const;          // canonical sorted key=value lines
  void SaveSnapshot(const std::string& path) const;

 private:
  std::map<std::string, std::string> kv_;
};

// Struct builders: defaults come from the struct, the config overrides
// field-by-field under the given key prefix (e.g. "source.", "trainer.").
DomainSpec DomainSpecFromConfig(const Config& c, const std::string& prefix,
                                const DomainSpec& defaults = DomainSpec());
ArchConfig ArchFromConfig(const Config& c, const std::string& prefix = "arch.");
StylizerConfig StylizerFromConfig(const Config& c,
                                  const std::string& prefix = "stylizer.");
LossConfig LossFromConfig(const Config& c, const std::string& prefix = "loss.");
TrainConfig TrainFromConfig(const Config& c,
                            const std::string& prefix = "trainer.");

}  // namespace fsde

#endif  // FSDE_CONFIG_HPP_
