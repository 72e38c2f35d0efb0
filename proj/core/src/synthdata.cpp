// core/src/synthdata.cpp

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

#include "fsde/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "fsde/rng.hpp"

namespace fsde {

namespace {

constexpr uint64_t kSubjectStream = 0x5334u;  // subject-level layout
constexpr uint64_t kSampleStream = 0x4652u;   // per-sample frame noise
constexpr uint64_t kSplitStream = 0x53504cu;
constexpr uint64_t kFewshotStream = 0x4653u;
constexpr uint64_t kPairStream = 0x5052u;
constexpr uint64_t kBatchStream = 0x4254u;

struct BlobLayout {
  std::vector<double> cx, cy, amp;
};

BlobLayout SubjectLayout(const DomainSpec& spec, uint64_t seed, int subject) {
  Rng rng(DeriveSeed(seed, {kSubjectStream, static_cast<uint64_t>(subject)}));
  BlobLayout layout;
  for (int k = 0; k < spec.class_signal.blob_count; ++k) {
    layout.cx.push_back(rng.Uniform(0.0, spec.image_width));
    layout.cy.push_back(rng.Uniform(0.0, spec.image_height));
    layout.amp.push_back(rng.Uniform(0.6, 1.0));
  }
  return layout;
}

// slot identifies the sample within a subject: [0, F) live, [F, 2F) spoof.
Sample RenderSample(const DomainSpec& spec, uint64_t seed, int subject,
                    int slot) {
  const int h = spec.image_height;
  const int w = spec.image_width;
  const bool live = slot < spec.frames_per_subject;
  BlobLayout layout = SubjectLayout(spec, seed, subject);
  Rng rng(DeriveSeed(seed, {kSampleStream, static_cast<uint64_t>(subject),
                            static_cast<uint64_t>(slot)}));

  // Per-frame jitter of the subject's blob layout.
  const int nblobs = spec.class_signal.blob_count;
  std::vector<double> cx(nblobs), cy(nblobs), amp(nblobs);
  for (int k = 0; k < nblobs; ++k) {
    cx[k] = layout.cx[k] + rng.Normal(0.0, 0.6);
    cy[k] = layout.cy[k] + rng.Normal(0.0, 0.6);
    amp[k] = layout.amp[k] * (1.0 + 0.05 * rng.Normal());
  }

  // Smooth low-frequency content field.
  const double s2 = 2.0 * spec.class_signal.blob_scale * spec.class_signal.blob_scale;
  std::vector<double> content(static_cast<size_t>(h) * w, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double field = 0.0;
      for (int k = 0; k < nblobs; ++k) {
        double dx = x - cx[k];
        double dy = y - cy[k];
        field += amp[k] * std::exp(-(dx * dx + dy * dy) / s2);
      }
      content[static_cast<size_t>(y) * w + x] = 0.2 + 0.55 * std::tanh(field);
    }
  }

  // Style acts on the content band only; the spoof grid is added afterwards
  // so the class evidence is invariant under the domain's style signal.
  GaussianBlurPlane(content, h, w, spec.style_signal.blur_sigma);

  std::vector<double> grid(static_cast<size_t>(h) * w, 0.0);
  if (!live) {
    const double amp_g = spec.class_signal.grid_amplitude;
    const double omega = 2.0 * std::numbers::pi / spec.class_signal.grid_period;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        grid[static_cast<size_t>(y) * w + x] =
            amp_g * std::cos(omega * x) * std::cos(omega * y);
      }
    }
  }

  Sample out;
  out.image = ImageBuf(3, h, w);
  out.label = live ? kLive : kSpoof;
  out.domain = spec.kind;
  out.domain_name = spec.name;
  out.subject_id = subject;
  for (int c = 0; c < 3; ++c) {
    const double gain = spec.style_signal.gain[c];
    const double bias = spec.style_signal.bias[c];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        size_t i = static_cast<size_t>(y) * w + x;
        double v = gain * content[i] + bias + grid[i] +
                   rng.Normal(0.0, spec.style_signal.noise_sigma);
        out.image.At(c, y, x) = static_cast<float>(Clamp01(v));
      }
    }
  }
  return out;
}

}  // namespace

std::string DomainKindName(DomainKind k) {
  switch (k) {
    case DomainKind::kSource: return "source";
    case DomainKind::kTarget: return "target";
    case DomainKind::kAux: return "aux";
  }
  return "?";
}

DomainKind DomainKindFromName(const std::string& name) {
  if (name == "source") return DomainKind::kSource;
  if (name == "target") return DomainKind::kTarget;
  if (name == "aux") return DomainKind::kAux;
  throw std::invalid_argument("unknown domain kind: " + name);
}

void DomainSpec::Validate() const {
  auto fail = [this](const std::string& field, const std::string& why) {
    throw std::invalid_argument("DomainSpec '" + name + "': " + field + " " + why);
  };
  for (int c = 0; c < 3; ++c) {
    if (!(style_signal.gain[c] > 0.0)) fail("style_signal.gain", "must be > 0");
  }
  if (style_signal.noise_sigma < 0.0) fail("style_signal.noise_sigma", "must be >= 0");
  if (style_signal.blur_sigma < 0.0) fail("style_signal.blur_sigma", "must be >= 0");
  if (class_signal.grid_amplitude < 0.0) fail("class_signal.grid_amplitude", "must be >= 0");
  if (!(class_signal.blob_scale > 0.0)) fail("class_signal.blob_scale", "must be > 0");
  if (class_signal.blob_count < 1) fail("class_signal.blob_count", "must be >= 1");
  if (class_signal.grid_period < 2) fail("class_signal.grid_period", "must be >= 2");
  if (image_height <= 0 || image_height % 2 != 0) fail("image_height", "must be positive and even");
  if (image_width <= 0 || image_width % 2 != 0) fail("image_width", "must be positive and even");
  if (n_subjects < 1) fail("n_subjects", "must be >= 1");
  if (frames_per_subject < 1) fail("frames_per_subject", "must be >= 1");
}

std::vector<int> DomainDataset::TrainPool() const { return SplitOrAll("train"); }

std::vector<int> DomainDataset::SplitOrAll(const std::string& split) const {
  auto it = splits.find(split);
  if (it != splits.end()) return it->second;
  std::vector<int> all(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) all[i] = static_cast<int>(i);
  return all;
}

std::vector<int> DomainDataset::PoolByLabel(const std::vector<int>& pool,
                                            int label) const {
  std::vector<int> out;
  for (int i : pool) {
    if (samples[i].label == label) out.push_back(i);
  }
  return out;
}

std::vector<int> DomainDataset::SubjectsInSplit(const std::string& split) const {
  std::set<int> subj;
  for (int i : SplitOrAll(split)) subj.insert(samples[i].subject_id);
  return {subj.begin(), subj.end()};
}

int BatchSlice::CountLabel(int label) const {
  int n = 0;
  for (int i : indices) {
    if (dataset->samples[i].label == label) ++n;
  }
  return n;
}

int Batch::TotalSize() const {
  int n = 0;
  for (const auto& s : slices) n += static_cast<int>(s.indices.size());
  return n;
}

const BatchSlice* Batch::Find(DomainKind k) const {
  for (const auto& s : slices) {
    if (s.kind == k) return &s;
  }
  return nullptr;
}

DomainDataset GenerateDomain(const DomainSpec& spec, uint64_t seed) {
  spec.Validate();
  DomainDataset ds;
  ds.name = spec.name;
  ds.kind = spec.kind;
  ds.spec = spec;
  ds.seed = seed;
  ds.samples.reserve(static_cast<size_t>(2) * spec.n_subjects *
                     spec.frames_per_subject);
  for (int subject = 0; subject < spec.n_subjects; ++subject) {
    for (int slot = 0; slot < 2 * spec.frames_per_subject; ++slot) {
      ds.samples.push_back(RenderSample(spec, seed, subject, slot));
    }
  }
  return ds;
}

DomainDataset SplitDataset(
    const DomainDataset& ds,
    const std::vector<std::pair<std::string, double>>& fractions,
    uint64_t seed) {
  double total = 0.0;
  for (const auto& [name, f] : fractions) {
    if (f < 0.0) throw std::invalid_argument("split fraction '" + name + "' < 0");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must sum to 1");
  }

  std::set<int> subject_set;
  for (const auto& s : ds.samples) subject_set.insert(s.subject_id);
  std::vector<int> subjects(subject_set.begin(), subject_set.end());
  if (subjects.size() < fractions.size()) {
    throw std::invalid_argument("fewer subjects than splits");
  }

  Rng rng(DeriveSeed(seed, {kSplitStream}));
  for (size_t i = subjects.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(subjects[i - 1], subjects[j]);
  }

  // Floor allocation, remainder to the largest fractional parts.
  const size_t n = subjects.size();
  std::vector<size_t> counts(fractions.size());
  std::vector<std::pair<double, size_t>> rema;
  size_t assigned = 0;
  for (size_t k = 0; k < fractions.size(); ++k) {
    double exact = fractions[k].second * static_cast<double>(n);
    counts[k] = static_cast<size_t>(std::floor(exact + 1e-12));
    assigned += counts[k];
    rema.push_back({exact - std::floor(exact + 1e-12), k});
  }
  std::stable_sort(rema.begin(), rema.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t r = 0; assigned < n; ++r, ++assigned) {
    counts[rema[r % rema.size()].second] += 1;
  }

  std::map<int, std::string> subject_split;
  size_t pos = 0;
  for (size_t k = 0; k < fractions.size(); ++k) {
    for (size_t j = 0; j < counts[k]; ++j) {
      subject_split[subjects[pos++]] = fractions[k].first;
    }
  }

  DomainDataset out = ds;
  out.splits.clear();
  for (const auto& [name, f] : fractions) out.splits[name] = {};
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.splits[subject_split[out.samples[i].subject_id]].push_back(
        static_cast<int>(i));
  }
  return out;
}

std::pair<DomainDataset, DomainDataset> MakeFewshotTarget(
    const DomainDataset& ds, int n_subjects, uint64_t seed) {
  std::vector<int> train_subjects = ds.SubjectsInSplit("train");
  if (n_subjects < 1) throw std::invalid_argument("n_subjects must be >= 1");
  if (static_cast<size_t>(n_subjects) > train_subjects.size()) {
    throw std::invalid_argument("n_subjects exceeds available training subjects");
  }

  Rng rng(DeriveSeed(seed, {kFewshotStream}));
  for (size_t i = train_subjects.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(train_subjects[i - 1], train_subjects[j]);
  }
  std::set<int> chosen(train_subjects.begin(), train_subjects.begin() + n_subjects);

  DomainDataset fewshot;
  fewshot.name = ds.name;
  fewshot.kind = ds.kind;
  fewshot.spec = ds.spec;
  fewshot.seed = seed;

  DomainDataset heldout = fewshot;
  heldout.eval_only = true;

  // Index remap: original index -> (which, new index).
  std::map<int, int> to_few, to_held;
  std::set<int> train_idx;
  {
    // No "train" split means the whole dataset is eligible, mirroring
    // SubjectsInSplit above.
    for (int i : ds.SplitOrAll("train")) train_idx.insert(i);
  }
  for (size_t i = 0; i < ds.samples.size(); ++i) {
    const Sample& s = ds.samples[i];
    bool few = chosen.count(s.subject_id) > 0 && train_idx.count(static_cast<int>(i)) > 0;
    if (few) {
      to_few[static_cast<int>(i)] = static_cast<int>(fewshot.samples.size());
      fewshot.samples.push_back(s);
    } else {
      to_held[static_cast<int>(i)] = static_cast<int>(heldout.samples.size());
      heldout.samples.push_back(s);
    }
  }

  std::vector<int> all_few(fewshot.samples.size());
  for (size_t i = 0; i < all_few.size(); ++i) all_few[i] = static_cast<int>(i);
  fewshot.splits["train"] = all_few;

  for (const auto& [name, idx] : ds.splits) {
    std::vector<int> remapped;
    for (int i : idx) {
      auto it = to_held.find(i);
      if (it != to_held.end()) remapped.push_back(it->second);
    }
    heldout.splits[name] = remapped;
  }
  return {std::move(fewshot), std::move(heldout)};
}

std::vector<IndexPair> SampleSameClassPairs(const DomainDataset& a,
                                            const DomainDataset& b, int count,
                                            uint64_t seed) {
  const bool src_tgt = a.kind == DomainKind::kSource && b.kind == DomainKind::kTarget;
  const bool tgt_aux = a.kind == DomainKind::kTarget && b.kind == DomainKind::kAux;
  if (!src_tgt && !tgt_aux) {
    throw std::invalid_argument(
        "cross-domain pairs must be (source, target) or (target, aux); got (" +
        DomainKindName(a.kind) + ", " + DomainKindName(b.kind) + ")");
  }
  std::vector<int> all_a(a.samples.size()), all_b(b.samples.size());
  for (size_t i = 0; i < all_a.size(); ++i) all_a[i] = static_cast<int>(i);
  for (size_t i = 0; i < all_b.size(); ++i) all_b[i] = static_cast<int>(i);

  std::vector<std::vector<int>> pool_a{a.PoolByLabel(all_a, kSpoof),
                                       a.PoolByLabel(all_a, kLive)};
  std::vector<std::vector<int>> pool_b{b.PoolByLabel(all_b, kSpoof),
                                       b.PoolByLabel(all_b, kLive)};
  for (int label : {kSpoof, kLive}) {
    if (pool_a[label].empty()) {
      throw std::invalid_argument("dataset '" + a.name + "' has no " +
                                  (label == kLive ? std::string("live") : std::string("spoof")) +
                                  " samples");
    }
    if (pool_b[label].empty()) {
      throw std::invalid_argument("dataset '" + b.name + "' has no " +
                                  (label == kLive ? std::string("live") : std::string("spoof")) +
                                  " samples");
    }
  }

  Rng rng(DeriveSeed(seed, {kPairStream}));
  std::vector<IndexPair> pairs;
  pairs.reserve(count);
  for (int k = 0; k < count; ++k) {
    int label = static_cast<int>(rng.UniformInt(0, 1));
    int ia = pool_a[label][rng.UniformInt(0, static_cast<int64_t>(pool_a[label].size()) - 1)];
    int ib = pool_b[label][rng.UniformInt(0, static_cast<int64_t>(pool_b[label].size()) - 1)];
    pairs.push_back({ia, ib});
  }
  return pairs;
}

namespace {

void DrawSlice(Batch& batch, const DomainDataset* ds, DomainKind kind, int size,
               Rng& rng) {
  if (size == 0) return;
  if (ds == nullptr) {
    throw std::invalid_argument("batch slice for " + DomainKindName(kind) +
                                " requested but dataset missing");
  }
  if (size < 0 || size % 2 != 0) {
    throw std::invalid_argument("batch size for " + DomainKindName(kind) +
                                " must be even and >= 0");
  }
  if (ds->eval_only) {
    throw std::invalid_argument("dataset '" + ds->name +
                                "' is eval-only and cannot be batched for training");
  }
  std::vector<int> pool = ds->TrainPool();
  std::vector<int> live = ds->PoolByLabel(pool, kLive);
  std::vector<int> spoof = ds->PoolByLabel(pool, kSpoof);
  if (live.empty() || spoof.empty()) {
    throw std::invalid_argument("dataset '" + ds->name +
                                "' lacks a class in its train pool");
  }
  BatchSlice slice;
  slice.kind = kind;
  slice.dataset = ds;
  for (int i = 0; i < size / 2; ++i) {
    slice.indices.push_back(live[rng.UniformInt(0, static_cast<int64_t>(live.size()) - 1)]);
  }
  for (int i = 0; i < size / 2; ++i) {
    slice.indices.push_back(spoof[rng.UniformInt(0, static_cast<int64_t>(spoof.size()) - 1)]);
  }
  batch.slices.push_back(std::move(slice));
}

}  // namespace

Batch ComposeBatch(const DomainDataset* src, const DomainDataset* tgt,
                   const DomainDataset* aux, const BatchSizes& sizes,
                   uint64_t seed) {
  Rng rng(DeriveSeed(seed, {kBatchStream}));
  Batch batch;
  DrawSlice(batch, src, DomainKind::kSource, sizes.source, rng);
  DrawSlice(batch, tgt, DomainKind::kTarget, sizes.target, rng);
  DrawSlice(batch, aux, DomainKind::kAux, sizes.aux, rng);
  return batch;
}

}  // namespace fsde
