// core/src/io.cpp

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

#include "fsde/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fsde {

namespace fs = std::filesystem;
using nlohmann::json;

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteDoubleArray(const std::string& path, const double* data, int64_t n) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(n) * static_cast<std::streamsize>(sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> ReadDoubleArray(const std::string& path, int64_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::vector<double> data(static_cast<size_t>(expected));
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(expected) * static_cast<std::streamsize>(sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(expected * static_cast<int64_t>(sizeof(double)))) {
    throw std::runtime_error("short read (want " + std::to_string(expected) +
                             " doubles): " + path);
  }
  return data;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatPercentCell(double mean_fraction, double std_fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f ± %.2f", 100.0 * mean_fraction,
                100.0 * std_fraction);
  return buf;
}

namespace {

json SpecToJson(const DomainSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["kind"] = DomainKindName(spec.kind);
  j["class_signal"] = {{"blob_scale", spec.class_signal.blob_scale},
                       {"blob_count", spec.class_signal.blob_count},
                       {"grid_amplitude", spec.class_signal.grid_amplitude},
                       {"grid_period", spec.class_signal.grid_period}};
  j["style_signal"] = {
      {"gain", {spec.style_signal.gain[0], spec.style_signal.gain[1], spec.style_signal.gain[2]}},
      {"bias", {spec.style_signal.bias[0], spec.style_signal.bias[1], spec.style_signal.bias[2]}},
      {"blur_sigma", spec.style_signal.blur_sigma},
      {"noise_sigma", spec.style_signal.noise_sigma}};
  j["image_height"] = spec.image_height;
  j["image_width"] = spec.image_width;
  j["n_subjects"] = spec.n_subjects;
  j["frames_per_subject"] = spec.frames_per_subject;
  return j;
}

DomainSpec SpecFromJson(const json& j) {
  DomainSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.kind = DomainKindFromName(j.at("kind").get<std::string>());
  const json& cs = j.at("class_signal");
  spec.class_signal.blob_scale = cs.at("blob_scale").get<double>();
  spec.class_signal.blob_count = cs.at("blob_count").get<int>();
  spec.class_signal.grid_amplitude = cs.at("grid_amplitude").get<double>();
  spec.class_signal.grid_period = cs.at("grid_period").get<int>();
  const json& ss = j.at("style_signal");
  for (int c = 0; c < 3; ++c) {
    spec.style_signal.gain[c] = ss.at("gain").at(c).get<double>();
    spec.style_signal.bias[c] = ss.at("bias").at(c).get<double>();
  }
  spec.style_signal.blur_sigma = ss.at("blur_sigma").get<double>();
  spec.style_signal.noise_sigma = ss.at("noise_sigma").get<double>();
  spec.image_height = j.at("image_height").get<int>();
  spec.image_width = j.at("image_width").get<int>();
  spec.n_subjects = j.at("n_subjects").get<int>();
  spec.frames_per_subject = j.at("frames_per_subject").get<int>();
  return spec;
}

}  // namespace

void SaveDataset(const std::string& dir, const DomainDataset& ds) {
  EnsureDir(dir);
  json manifest;
  manifest["name"] = ds.name;
  manifest["kind"] = DomainKindName(ds.kind);
  manifest["seed"] = ds.seed;
  manifest["eval_only"] = ds.eval_only;
  manifest["spec"] = SpecToJson(ds.spec);
  manifest["n_samples"] = ds.samples.size();
  if (!ds.samples.empty()) {
    const ImageBuf& img = ds.samples[0].image;
    manifest["image_shape"] = {img.channels, img.height, img.width};
  } else {
    manifest["image_shape"] = {0, 0, 0};
  }
  json splits = json::object();
  for (const auto& [name, idx] : ds.splits) splits[name] = idx;
  manifest["splits"] = splits;
  WriteTextFile(dir + "/manifest.json", manifest.dump(2) + "\n");

  std::ofstream bin(dir + "/images.bin", std::ios::binary | std::ios::trunc);
  if (!bin) throw std::runtime_error("cannot open for write: " + dir + "/images.bin");
  for (const Sample& s : ds.samples) {
    bin.write(reinterpret_cast<const char*>(s.image.data.data()),
              static_cast<std::streamsize>(s.image.data.size() * sizeof(float)));
  }
  if (!bin) throw std::runtime_error("write failed: " + dir + "/images.bin");

  std::ostringstream csv;
  csv << "index,label,subject_id\n";
  for (size_t i = 0; i < ds.samples.size(); ++i) {
    csv << i << "," << ds.samples[i].label << "," << ds.samples[i].subject_id << "\n";
  }
  WriteTextFile(dir + "/labels.csv", csv.str());
}

DomainDataset LoadDataset(const std::string& dir) {
  json manifest = json::parse(ReadTextFile(dir + "/manifest.json"));
  DomainDataset ds;
  ds.name = manifest.at("name").get<std::string>();
  ds.kind = DomainKindFromName(manifest.at("kind").get<std::string>());
  ds.seed = manifest.at("seed").get<uint64_t>();
  ds.eval_only = manifest.at("eval_only").get<bool>();
  ds.spec = SpecFromJson(manifest.at("spec"));
  for (auto it = manifest.at("splits").begin(); it != manifest.at("splits").end(); ++it) {
    ds.splits[it.key()] = it.value().get<std::vector<int>>();
  }
  const size_t n = manifest.at("n_samples").get<size_t>();
  const int c = manifest.at("image_shape").at(0).get<int>();
  const int h = manifest.at("image_shape").at(1).get<int>();
  const int w = manifest.at("image_shape").at(2).get<int>();

  std::ifstream bin(dir + "/images.bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open for read: " + dir + "/images.bin");

  std::istringstream csv(ReadTextFile(dir + "/labels.csv"));
  std::string line;
  std::getline(csv, line);  // header
  ds.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    if (!std::getline(csv, line)) {
      throw std::runtime_error("labels.csv truncated at row " + std::to_string(i));
    }
    size_t idx = 0;
    int label = 0, subject = 0;
    if (std::sscanf(line.c_str(), "%zu,%d,%d", &idx, &label, &subject) != 3 || idx != i) {
      throw std::runtime_error("labels.csv malformed at row " + std::to_string(i));
    }
    Sample& s = ds.samples[i];
    s.label = label;
    s.subject_id = subject;
    s.domain = ds.kind;
    s.domain_name = ds.name;
    s.image = ImageBuf(c, h, w);
    bin.read(reinterpret_cast<char*>(s.image.data.data()),
             static_cast<std::streamsize>(s.image.data.size() * sizeof(float)));
    if (!bin) {
      throw std::runtime_error("images.bin truncated at sample " + std::to_string(i));
    }
  }
  return ds;
}

void SaveProvenance(const std::string& path,
                    const std::vector<AuxProvenance>& rows) {
  std::ostringstream csv;
  csv << "aux_index,content_index,style_index,alpha\n";
  for (const AuxProvenance& r : rows) {
    csv << r.aux_index << "," << r.content_index << "," << r.style_index << ","
        << FormatDouble(r.alpha) << "\n";
  }
  WriteTextFile(path, csv.str());
}

std::vector<AuxProvenance> LoadProvenance(const std::string& path) {
  std::istringstream csv(ReadTextFile(path));
  std::string line;
  std::getline(csv, line);  // header
  std::vector<AuxProvenance> rows;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    AuxProvenance r;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf", &r.aux_index, &r.content_index,
                    &r.style_index, &r.alpha) != 4) {
      throw std::runtime_error("provenance row malformed: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

void SaveScoreCsv(const std::string& path, const ScoreSet& set) {
  std::ostringstream csv;
  csv << "sample_index,domain,label,score\n";
  for (size_t i = 0; i < set.scores.size(); ++i) {
    const int idx = i < set.sample_index.size() ? set.sample_index[i]
                                                : static_cast<int>(i);
    csv << idx << "," << set.domain << "," << set.labels[i] << ","
        << FormatDouble(set.scores[i]) << "\n";
  }
  WriteTextFile(path, csv.str());
}

ScoreSet LoadScoreCsv(const std::string& path) {
  std::istringstream csv(ReadTextFile(path));
  std::string line;
  std::getline(csv, line);  // header
  ScoreSet set;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    const size_t c3 = line.find(',', c2 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos) {
      throw std::runtime_error("score row malformed: " + line);
    }
    set.sample_index.push_back(std::stoi(line.substr(0, c1)));
    set.domain = line.substr(c1 + 1, c2 - c1 - 1);
    set.labels.push_back(std::stoi(line.substr(c2 + 1, c3 - c2 - 1)));
    set.scores.push_back(std::stod(line.substr(c3 + 1)));
  }
  return set;
}

namespace {

const DomainMetrics& MetricsFor(const MetricsReport& report,
                                const std::string& domain) {
  auto it = report.per_domain.find(domain);
  if (it == report.per_domain.end()) {
    throw std::runtime_error("report missing domain '" + domain + "'");
  }
  return it->second;
}

}  // namespace

void SaveReportJson(const std::string& path, const SeedReports& agg) {
  if (agg.seeds.size() != agg.reports.size() || agg.reports.empty()) {
    throw std::invalid_argument("seed/report lists must be parallel and nonempty");
  }
  json j;
  std::vector<double> thresholds;
  for (const MetricsReport& r : agg.reports) thresholds.push_back(r.threshold);
  j["threshold"] = AggregateValues(thresholds).mean;
  j["seeds"] = agg.seeds;

  json per_domain = json::object(), mean = json::object(), stddev = json::object();
  for (const auto& [domain, unused] : agg.reports[0].per_domain) {
    (void)unused;
    json values = json::object(), dmean = json::object(), dstd = json::object();
    const std::vector<std::pair<std::string, double DomainMetrics::*>> metrics = {
        {"apcer", &DomainMetrics::apcer},
        {"bpcer", &DomainMetrics::bpcer},
        {"acer", &DomainMetrics::acer},
        {"hter", &DomainMetrics::hter}};
    for (const auto& [metric, member] : metrics) {
      std::vector<double> vals;
      for (const MetricsReport& r : agg.reports) {
        vals.push_back(MetricsFor(r, domain).*member);
      }
      Aggregate a = AggregateValues(vals);
      values[metric] = vals;
      dmean[metric] = a.mean;
      dstd[metric] = a.stddev;
    }
    per_domain[domain] = values;
    mean[domain] = dmean;
    stddev[domain] = dstd;
  }
  j["per_domain"] = per_domain;
  j["mean"] = mean;
  j["std"] = stddev;
  WriteTextFile(path, j.dump(2) + "\n");
}

SeedReports LoadReportJson(const std::string& path) {
  json j = json::parse(ReadTextFile(path));
  SeedReports agg;
  agg.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  const json& per_domain = j.at("per_domain");
  agg.reports.resize(agg.seeds.size());
  for (size_t s = 0; s < agg.seeds.size(); ++s) {
    agg.reports[s].threshold = j.at("threshold").get<double>();
    for (auto it = per_domain.begin(); it != per_domain.end(); ++it) {
      DomainMetrics m;
      m.apcer = it.value().at("apcer").at(s).get<double>();
      m.bpcer = it.value().at("bpcer").at(s).get<double>();
      m.acer = it.value().at("acer").at(s).get<double>();
      m.hter = it.value().at("hter").at(s).get<double>();
      agg.reports[s].per_domain[it.key()] = m;
    }
  }
  return agg;
}

}  // namespace fsde
