// core/src/config.cpp

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

#include "fsde/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "fsde/io.hpp"

namespace fsde {

namespace {

std::string Trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const std::string& want) {
  throw std::invalid_argument("config key '" + key + "': expected " + want +
                              ", got '" + value + "'");
}

}  // namespace

Config Config::FromFile(const std::string& path) {
  return FromString(ReadTextFile(path));
}

Config Config::FromString(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    }
    const std::string key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    }
    c.kv_[key] = Trim(line.substr(eq + 1));
  }
  return c;
}

void Config::Set(const std::string& key, const std::string& value) {
  if (key.empty()) throw std::invalid_argument("config key must be nonempty");
  kv_[key] = value;
}

void Config::SetKv(const std::string& kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override '" + kv + "': expected key=value");
  }
  Set(Trim(kv.substr(0, eq)), Trim(kv.substr(eq + 1)));
}

void Config::Merge(const Config& other) {
  for (const auto& [k, v] : other.kv_) kv_[k] = v;
}

bool Config::Has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::GetString(const std::string& key,
                              const std::string& def) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::GetDouble(const std::string& key, double def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  const char* s = it->second.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') BadValue(key, it->second, "a number");
  return v;
}

int Config::GetInt(const std::string& key, int def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  const char* s = it->second.c_str();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0') BadValue(key, it->second, "an integer");
  return static_cast<int>(v);
}

uint64_t Config::GetUint64(const std::string& key, uint64_t def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  const char* s = it->second.c_str();
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') BadValue(key, it->second, "an unsigned integer");
  return static_cast<uint64_t>(v);
}

bool Config::GetBool(const std::string& key, bool def) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  BadValue(key, it->second, "a boolean");
}

std::vector<std::string> Config::GetList(const std::string& key,
                                         const std::string& def) const {
  const std::string raw = GetString(key, def);
  std::vector<std::string> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<uint64_t> Config::GetUint64List(const std::string& key,
                                            const std::string& def) const {
  std::vector<uint64_t> out;
  for (const std::string& item : GetList(key, def)) {
    const char* s = item.c_str();
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0') BadValue(key, item, "an unsigned integer");
    out.push_back(static_cast<uint64_t>(v));
  }
  return out;
}

std::vector<std::string> Config::Keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_) out.push_back(k);
  return out;  // std::map iterates in sorted order
}

std::string Config::Serialize() const {
  std::ostringstream out;
  for (const auto& [k, v] : kv_) out << k << " = " << v << "\n";
  return out.str();
}

void Config::SaveSnapshot(const std::string& path) const {
  WriteTextFile(path, Serialize());
}

DomainSpec DomainSpecFromConfig(const Config& c, const std::string& prefix,
                                const DomainSpec& defaults) {
  DomainSpec s = defaults;
  s.name = c.GetString(prefix + "name", s.name);
  if (c.Has(prefix + "kind")) {
    s.kind = DomainKindFromName(c.GetString(prefix + "kind", ""));
  }
  s.class_signal.blob_scale =
      c.GetDouble(prefix + "blob_scale", s.class_signal.blob_scale);
  s.class_signal.blob_count =
      c.GetInt(prefix + "blob_count", s.class_signal.blob_count);
  s.class_signal.grid_amplitude =
      c.GetDouble(prefix + "grid_amplitude", s.class_signal.grid_amplitude);
  s.class_signal.grid_period =
      c.GetInt(prefix + "grid_period", s.class_signal.grid_period);
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i);
    s.style_signal.gain[i] =
        c.GetDouble(prefix + "gain" + idx, s.style_signal.gain[i]);
    s.style_signal.bias[i] =
        c.GetDouble(prefix + "bias" + idx, s.style_signal.bias[i]);
  }
  s.style_signal.blur_sigma =
      c.GetDouble(prefix + "blur_sigma", s.style_signal.blur_sigma);
  s.style_signal.noise_sigma =
      c.GetDouble(prefix + "noise_sigma", s.style_signal.noise_sigma);
  s.image_height = c.GetInt(prefix + "image_height", s.image_height);
  s.image_width = c.GetInt(prefix + "image_width", s.image_width);
  s.n_subjects = c.GetInt(prefix + "n_subjects", s.n_subjects);
  s.frames_per_subject =
      c.GetInt(prefix + "frames_per_subject", s.frames_per_subject);
  return s;
}

ArchConfig ArchFromConfig(const Config& c, const std::string& prefix) {
  ArchConfig a = DeskArch();
  a.kind = c.GetString(prefix + "kind", a.kind);
  if (a.kind == "resnet18" && !c.Has(prefix + "feature_dim")) a = PaperArch();
  a.in_channels = c.GetInt(prefix + "in_channels", a.in_channels);
  a.image_size = c.GetInt(prefix + "image_size", a.image_size);
  a.feature_dim = c.GetInt(prefix + "feature_dim", a.feature_dim);
  a.disc_hidden = c.GetInt(prefix + "disc_hidden", a.disc_hidden);
  if (c.Has(prefix + "widths")) {
    a.widths.clear();
    for (const std::string& w : c.GetList(prefix + "widths", "")) {
      a.widths.push_back(std::stoi(w));
    }
  }
  return a;
}

StylizerConfig StylizerFromConfig(const Config& c, const std::string& prefix) {
  StylizerConfig s;
  s.wavelet_depth = c.GetInt(prefix + "wavelet_depth", s.wavelet_depth);
  s.alpha = c.GetDouble(prefix + "alpha", s.alpha);
  s.aux_ratio = c.GetDouble(prefix + "aux_ratio", s.aux_ratio);
  s.eig_floor = c.GetDouble(prefix + "eig_floor", s.eig_floor);
  s.detail_min_level = c.GetInt(prefix + "detail_min_level", s.detail_min_level);
  return s;
}

LossConfig LossFromConfig(const Config& c, const std::string& prefix) {
  LossConfig l;
  l.lambda1 = c.GetDouble(prefix + "lambda1", l.lambda1);
  l.lambda2 = c.GetDouble(prefix + "lambda2", l.lambda2);
  l.lambda3 = c.GetDouble(prefix + "lambda3", l.lambda3);
  l.margin = c.GetDouble(prefix + "margin", l.margin);
  return l;
}

TrainConfig TrainFromConfig(const Config& c, const std::string& prefix) {
  TrainConfig t;
  t.lr = c.GetDouble(prefix + "lr", t.lr);
  t.weight_decay = c.GetDouble(prefix + "weight_decay", t.weight_decay);
  t.beta1 = c.GetDouble(prefix + "beta1", t.beta1);
  t.beta2 = c.GetDouble(prefix + "beta2", t.beta2);
  t.adam_eps = c.GetDouble(prefix + "adam_eps", t.adam_eps);
  t.steps = c.GetInt(prefix + "steps", t.steps);
  t.batch.source = c.GetInt(prefix + "batch_source", t.batch.source);
  t.batch.target = c.GetInt(prefix + "batch_target", t.batch.target);
  t.batch.aux = c.GetInt(prefix + "batch_aux", t.batch.aux);
  t.loss = LossFromConfig(c);
  t.use_target = c.GetBool(prefix + "use_target", t.use_target);
  t.use_aux = c.GetBool(prefix + "use_aux", t.use_aux);
  t.use_cont = c.GetBool(prefix + "use_cont", t.use_cont);
  t.use_adv = c.GetBool(prefix + "use_adv", t.use_adv);
  t.use_lfc = c.GetBool(prefix + "use_lfc", t.use_lfc);
  t.progressive = c.GetBool(prefix + "progressive", t.progressive);
  t.adv_live_only = c.GetBool(prefix + "adv_live_only", t.adv_live_only);
  t.keep_ta_in_cs = c.GetBool(prefix + "keep_ta_in_cs", t.keep_ta_in_cs);
  const std::string policy = c.GetString(prefix + "switch_policy", "fixed");
  if (policy == "fixed") {
    t.switch_policy = SwitchPolicy::kFixedFraction;
  } else if (policy == "accuracy") {
    t.switch_policy = SwitchPolicy::kDiscAccuracy;
  } else {
    throw std::invalid_argument("config key '" + prefix +
                                "switch_policy': expected fixed|accuracy, got '" +
                                policy + "'");
  }
  t.switch_fraction = c.GetDouble(prefix + "switch_fraction", t.switch_fraction);
  t.acc_window = c.GetInt(prefix + "acc_window", t.acc_window);
  t.acc_threshold = c.GetDouble(prefix + "acc_threshold", t.acc_threshold);
  t.acc_fallback_fraction =
      c.GetDouble(prefix + "acc_fallback_fraction", t.acc_fallback_fraction);
  t.warm_start = c.GetBool(prefix + "warm_start", t.warm_start);
  t.seed = c.GetUint64(prefix + "seed", t.seed);
  return t;
}

}  // namespace fsde
