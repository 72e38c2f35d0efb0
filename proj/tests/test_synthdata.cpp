// tests/test_synthdata.cpp

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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <doctest.h>

#include "fsde/synthdata.hpp"

using namespace fsde;

namespace {

DomainSpec SmallSpec(int subjects, int frames) {
  DomainSpec s;
  s.n_subjects = subjects;
  s.frames_per_subject = frames;
  return s;
}

// Mean intensity of one channel over a whole dataset.
double ChannelMean(const DomainDataset& ds, int ch) {
  double sum = 0.0;
  int64_t count = 0;
  for (const Sample& s : ds.samples) {
    const ImageBuf& im = s.image;
    for (int y = 0; y < im.height; ++y) {
      for (int x = 0; x < im.width; ++x) sum += im.At(ch, y, x);
    }
    count += static_cast<int64_t>(im.height) * im.width;
  }
  return sum / static_cast<double>(count);
}

// Adjacent-pixel squared-difference energy, averaged per class; the spoof
// minus live gap isolates the high-frequency grid from content and noise.
double ClassHfGap(const DomainDataset& ds) {
  double energy[2] = {0.0, 0.0};
  int counts[2] = {0, 0};
  for (const Sample& s : ds.samples) {
    const ImageBuf& im = s.image;
    double e = 0.0;
    for (int c = 0; c < im.channels; ++c) {
      for (int y = 0; y + 1 < im.height; ++y) {
        for (int x = 0; x + 1 < im.width; ++x) {
          const double dx = im.At(c, y, x + 1) - im.At(c, y, x);
          const double dy = im.At(c, y + 1, x) - im.At(c, y, x);
          e += dx * dx + dy * dy;
        }
      }
    }
    energy[s.label] += e;
    ++counts[s.label];
  }
  return energy[kSpoof] / counts[kSpoof] - energy[kLive] / counts[kLive];
}

}  // namespace

TEST_CASE("4 subjects x 3 frames gives 24 samples, 12 live / 12 spoof") {
  const DomainDataset ds = GenerateDomain(SmallSpec(4, 3), 7);
  CHECK(ds.samples.size() == 24);
  int live = 0, spoof = 0;
  for (const Sample& s : ds.samples) (s.label == kLive ? live : spoof)++;
  CHECK(live == 12);
  CHECK(spoof == 12);
}

TEST_CASE("same spec and seed regenerate identical images") {
  const DomainSpec spec = SmallSpec(3, 2);
  const DomainDataset a = GenerateDomain(spec, 11);
  const DomainDataset b = GenerateDomain(spec, 11);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].image.data == b.samples[i].image.data);
    CHECK(a.samples[i].label == b.samples[i].label);
    CHECK(a.samples[i].subject_id == b.samples[i].subject_id);
  }
}

TEST_CASE("red gain shifts the red mean without moving class energy") {
  DomainSpec base = SmallSpec(10, 10);
  base.style_signal.noise_sigma = 0.0;  // isolate the gain effect
  DomainSpec tinted = base;
  tinted.style_signal.gain[0] = 1.3;
  const DomainDataset a = GenerateDomain(base, 3);
  const DomainDataset b = GenerateDomain(tinted, 3);
  const double ratio = ChannelMean(b, 0) / ChannelMean(a, 0);
  CHECK(ratio == doctest::Approx(1.3).epsilon(0.05));
  const double gap_a = ClassHfGap(a), gap_b = ClassHfGap(b);
  CHECK(gap_a > 0.0);
  CHECK(gap_b / gap_a == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("subject-disjoint split honors 0.8/0.1/0.1 on 10 subjects") {
  const DomainDataset ds = GenerateDomain(SmallSpec(10, 4), 5);
  const DomainDataset split = SplitDataset(
      ds, {{"train", 0.8}, {"val", 0.1}, {"test", 0.1}}, 21);
  CHECK(split.SubjectsInSplit("train").size() == 8);
  CHECK(split.SubjectsInSplit("val").size() == 1);
  CHECK(split.SubjectsInSplit("test").size() == 1);

  // identical assignment across runs
  const DomainDataset again = SplitDataset(
      ds, {{"train", 0.8}, {"val", 0.1}, {"test", 0.1}}, 21);
  CHECK(split.splits == again.splits);

  // each subject's frames land in exactly one split
  std::map<int, std::set<std::string>> where;
  for (const auto& [name, idx] : split.splits) {
    for (int i : idx) where[split.samples[i].subject_id].insert(name);
  }
  for (const auto& [subject, names] : where) CHECK(names.size() == 1);

  // split lists cover the dataset exactly once
  size_t total = 0;
  for (const auto& [name, idx] : split.splits) total += idx.size();
  CHECK(total == ds.samples.size());
}

TEST_CASE("fewshot of every training subject empties the rest of train") {
  const DomainDataset ds = GenerateDomain(SmallSpec(5, 3), 13);
  const DomainDataset split =
      SplitDataset(ds, {{"train", 0.8}, {"test", 0.2}}, 2);
  const size_t n_train_subj = split.SubjectsInSplit("train").size();
  auto pair = MakeFewshotTarget(split, static_cast<int>(n_train_subj), 3);
  // everything that was trainable went into the few-shot set
  CHECK(pair.first.samples.size() == split.SplitOrAll("train").size());
  // the held-out side is exactly the test portion
  CHECK(pair.second.samples.size() == split.splits.at("test").size());
  CHECK(pair.second.eval_only);
}

TEST_CASE("fewshot plus heldout partitions the dataset") {
  const DomainDataset ds = GenerateDomain(SmallSpec(6, 4), 19);
  auto pair = MakeFewshotTarget(ds, 2, 23);
  CHECK(pair.first.samples.size() + pair.second.samples.size() ==
        ds.samples.size());
  // disjoint by subject: few-shot subjects never appear in heldout
  std::set<int> few_subjects;
  for (const Sample& s : pair.first.samples) few_subjects.insert(s.subject_id);
  CHECK(few_subjects.size() == 2);
  for (const Sample& s : pair.second.samples) {
    CHECK(few_subjects.count(s.subject_id) == 0);
  }
  // all frames of the chosen subjects were taken
  size_t expect = 0;
  for (const Sample& s : ds.samples) {
    if (few_subjects.count(s.subject_id)) ++expect;
  }
  CHECK(pair.first.samples.size() == expect);
}

TEST_CASE("pair sampler emits label-matched pairs at the asked count") {
  const DomainDataset src = GenerateDomain(SmallSpec(4, 3), 1);
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  tspec.name = "t";
  const DomainDataset tgt = GenerateDomain(tspec, 2);
  const auto pairs = SampleSameClassPairs(src, tgt, 10, 4);
  CHECK(pairs.size() == 10);
  for (const IndexPair& p : pairs) {
    CHECK(src.samples[p.a].label == tgt.samples[p.b].label);
  }
}

TEST_CASE("pair classes are near 50/50 over 10000 draws") {
  const DomainDataset src = GenerateDomain(SmallSpec(4, 3), 1);
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  tspec.name = "t";
  const DomainDataset tgt = GenerateDomain(tspec, 2);
  const auto pairs = SampleSameClassPairs(src, tgt, 10000, 8);
  int live = 0;
  for (const IndexPair& p : pairs) live += src.samples[p.a].label == kLive;
  CHECK(std::abs(live / 10000.0 - 0.5) < 0.03);
}

TEST_CASE("batch of (2,2,2) holds one live and one spoof per domain") {
  const DomainDataset src = GenerateDomain(SmallSpec(4, 3), 1);
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  const DomainDataset tgt = GenerateDomain(tspec, 2);
  DomainSpec aspec = SmallSpec(2, 2);
  aspec.kind = DomainKind::kAux;
  const DomainDataset aux = GenerateDomain(aspec, 3);
  BatchSizes sizes;
  sizes.source = sizes.target = sizes.aux = 2;
  const Batch b = ComposeBatch(&src, &tgt, &aux, sizes, 5);
  CHECK(b.TotalSize() == 6);
  for (const BatchSlice& slice : b.slices) {
    CHECK(slice.indices.size() == 2);
    CHECK(slice.CountLabel(kLive) == 1);
    CHECK(slice.CountLabel(kSpoof) == 1);
  }
}

TEST_CASE("odd slice sizes are rejected") {
  const DomainDataset src = GenerateDomain(SmallSpec(4, 3), 1);
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  const DomainDataset tgt = GenerateDomain(tspec, 2);
  DomainSpec aspec = SmallSpec(2, 2);
  aspec.kind = DomainKind::kAux;
  const DomainDataset aux = GenerateDomain(aspec, 3);
  BatchSizes sizes;
  sizes.source = 64;
  sizes.target = 4;
  sizes.aux = 7;
  CHECK_THROWS_AS(ComposeBatch(&src, &tgt, &aux, sizes, 5),
                  std::invalid_argument);
}

TEST_CASE("default batch composition is 64/4/8 and class balanced") {
  const DomainDataset src = GenerateDomain(SmallSpec(6, 8), 1);
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  const DomainDataset tgt = GenerateDomain(tspec, 2);
  DomainSpec aspec = SmallSpec(4, 4);
  aspec.kind = DomainKind::kAux;
  const DomainDataset aux = GenerateDomain(aspec, 3);
  const BatchSizes sizes;  // library defaults
  for (uint64_t seed = 0; seed < 25; ++seed) {
    const Batch b = ComposeBatch(&src, &tgt, &aux, sizes, seed);
    CHECK(b.TotalSize() == 76);
    CHECK(b.Find(DomainKind::kSource)->indices.size() == 64);
    CHECK(b.Find(DomainKind::kTarget)->indices.size() == 4);
    CHECK(b.Find(DomainKind::kAux)->indices.size() == 8);
    for (const BatchSlice& slice : b.slices) {
      CHECK(slice.CountLabel(kLive) * 2 ==
            static_cast<int>(slice.indices.size()));
    }
  }
}

TEST_CASE("eval-only datasets never reach a batch") {
  DomainSpec tspec = SmallSpec(3, 2);
  tspec.kind = DomainKind::kTarget;
  DomainDataset tgt = GenerateDomain(tspec, 2);
  tgt.eval_only = true;
  const DomainDataset src = GenerateDomain(SmallSpec(4, 3), 1);
  BatchSizes sizes;
  sizes.aux = 0;
  CHECK_THROWS(ComposeBatch(&src, &tgt, nullptr, sizes, 5));
}

TEST_CASE("invalid specs are rejected with the offending field named") {
  DomainSpec s = SmallSpec(4, 3);
  s.image_height = 31;  // wavelet downstream requires even dims
  CHECK_THROWS_AS(s.Validate(), std::invalid_argument);
  s = SmallSpec(0, 3);
  CHECK_THROWS_AS(s.Validate(), std::invalid_argument);
  s = SmallSpec(4, 3);
  s.style_signal.gain[1] = 0.0;
  CHECK_THROWS_AS(s.Validate(), std::invalid_argument);
  s = SmallSpec(4, 3);
  s.style_signal.noise_sigma = -0.1;
  CHECK_THROWS_AS(s.Validate(), std::invalid_argument);
}

TEST_CASE("style transform keeps images inside [0,1]") {
  DomainSpec s = SmallSpec(4, 4);
  s.style_signal.gain[0] = 1.6;
  s.style_signal.bias[2] = 0.3;
  s.style_signal.noise_sigma = 0.1;
  const DomainDataset ds = GenerateDomain(s, 9);
  for (const Sample& smp : ds.samples) {
    for (float v : smp.image.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}
