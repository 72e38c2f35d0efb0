// tests/test_io.cpp

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

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "fsde/io.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"

using namespace fsde;

namespace {

std::filesystem::path TempDir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / leaf;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("text and raw double files round-trip") {
  const auto dir = TempDir("fsde_io_raw");
  const std::string text = "line one\nline two\n";
  WriteTextFile((dir / "t.txt").string(), text);
  CHECK(ReadTextFile((dir / "t.txt").string()) == text);

  const std::vector<double> data = {0.1, -3.25, 1.0 / 3.0, 1e-300, 0.0};
  WriteDoubleArray((dir / "d.bin").string(), data.data(),
                   static_cast<int64_t>(data.size()));
  const std::vector<double> back =
      ReadDoubleArray((dir / "d.bin").string(), 5);
  CHECK(back == data);
  CHECK_THROWS(ReadDoubleArray((dir / "d.bin").string(), 6));
  std::filesystem::remove_all(dir);
}

TEST_CASE("full-precision decimal formatting survives a parse") {
  for (double v : {0.1, 1.0 / 3.0, 1.135, -2.5e-7, 12345.678901234567}) {
    CHECK(std::stod(FormatDouble(v)) == v);
  }
}

TEST_CASE("datasets round-trip bit-exactly through their directory form") {
  const auto dir = TempDir("fsde_io_dataset");

  DomainSpec spec;
  spec.n_subjects = 4;
  spec.frames_per_subject = 2;
  spec.image_height = spec.image_width = 8;
  const DomainDataset ds = SplitDataset(
      GenerateDomain(spec, 5), {{"train", 0.5}, {"val", 0.25}, {"test", 0.25}},
      7);

  SaveDataset(dir.string(), ds);
  const DomainDataset back = LoadDataset(dir.string());

  CHECK(back.name == ds.name);
  CHECK(back.kind == ds.kind);
  REQUIRE(back.samples.size() == ds.samples.size());
  for (size_t i = 0; i < ds.samples.size(); ++i) {
    CHECK(back.samples[i].label == ds.samples[i].label);
    CHECK(back.samples[i].subject_id == ds.samples[i].subject_id);
    CHECK(back.samples[i].image.data == ds.samples[i].image.data);
  }
  REQUIRE(back.splits.size() == ds.splits.size());
  for (const auto& [name, idx] : ds.splits) {
    CHECK(back.splits.at(name) == idx);
  }
  CHECK(back.eval_only == ds.eval_only);
  std::filesystem::remove_all(dir);
}

TEST_CASE("the eval-only flag survives serialization") {
  const auto dir = TempDir("fsde_io_evalonly");
  DomainSpec spec;
  spec.kind = DomainKind::kTarget;
  spec.name = "t";
  spec.n_subjects = 3;
  spec.frames_per_subject = 2;
  spec.image_height = spec.image_width = 8;
  const DomainDataset tgt = GenerateDomain(spec, 9);
  const auto [fewshot, heldout] = MakeFewshotTarget(tgt, 1, 11);
  CHECK(heldout.eval_only);
  SaveDataset(dir.string(), heldout);
  CHECK(LoadDataset(dir.string()).eval_only);
  std::filesystem::remove_all(dir);
}

TEST_CASE("provenance rows round-trip") {
  const auto dir = TempDir("fsde_io_prov");
  std::vector<AuxProvenance> rows(3);
  rows[0] = {0, 17, 4, 1.0};
  rows[1] = {1, 3, 2, 0.5};
  rows[2] = {2, 8, 0, 0.25};
  const std::string path = (dir / "provenance.csv").string();
  SaveProvenance(path, rows);
  const std::vector<AuxProvenance> back = LoadProvenance(path);
  REQUIRE(back.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(back[i].aux_index == rows[i].aux_index);
    CHECK(back[i].content_index == rows[i].content_index);
    CHECK(back[i].style_index == rows[i].style_index);
    CHECK(back[i].alpha == rows[i].alpha);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("score CSVs keep their header and exact values") {
  const auto dir = TempDir("fsde_io_scores");
  ScoreSet s;
  s.domain = "shifted";
  s.scores = {0.125, 1.0 / 3.0, 0.99999999999999989};
  s.labels = {kLive, kSpoof, kLive};
  s.sample_index = {5, 2, 9};
  const std::string path = (dir / "scores.csv").string();
  SaveScoreCsv(path, s);

  const std::string text = ReadTextFile(path);
  CHECK(text.rfind("sample_index,domain,label,score\n", 0) == 0);

  const ScoreSet back = LoadScoreCsv(path);
  CHECK(back.domain == s.domain);
  CHECK(back.scores == s.scores);
  CHECK(back.labels == s.labels);
  CHECK(back.sample_index == s.sample_index);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report JSON keeps the fixed schema and per-seed values") {
  const auto dir = TempDir("fsde_io_report");
  SeedReports agg;
  agg.seeds = {1, 2, 3};
  for (int i = 0; i < 3; ++i) {
    MetricsReport r;
    r.threshold = 0.5;
    DomainMetrics src;
    src.apcer = 0.01 * (i + 1);
    src.bpcer = 0.02;
    src.acer = (src.apcer + src.bpcer) / 2.0;
    src.hter = src.acer;
    r.per_domain["source"] = src;
    DomainMetrics tgt;
    tgt.hter = 0.1 + 0.01 * i;
    r.per_domain["shifted"] = tgt;
    agg.reports.push_back(r);
  }
  const std::string path = (dir / "report.json").string();
  SaveReportJson(path, agg);

  const std::string text = ReadTextFile(path);
  for (const char* key :
       {"\"threshold\"", "\"per_domain\"", "\"seeds\"", "\"mean\"", "\"std\""}) {
    CHECK(text.find(key) != std::string::npos);
  }

  const SeedReports back = LoadReportJson(path);
  CHECK(back.seeds == agg.seeds);
  REQUIRE(back.reports.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(back.reports[i].threshold == 0.5);
    CHECK(back.reports[i].per_domain.at("source").apcer ==
          agg.reports[i].per_domain.at("source").apcer);
    CHECK(back.reports[i].per_domain.at("shifted").hter ==
          agg.reports[i].per_domain.at("shifted").hter);
  }
  CHECK_THROWS(SaveReportJson(path, SeedReports{}));
  std::filesystem::remove_all(dir);
}
