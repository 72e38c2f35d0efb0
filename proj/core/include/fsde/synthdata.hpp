// core/include/fsde/synthdata.hpp

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

#ifndef FSDE_SYNTHDATA_HPP
#define FSDE_SYNTHDATA_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fsde/image.hpp"

namespace fsde {

inline constexpr int kSpoof = 0;
inline constexpr int kLive = 1;

enum class DomainKind { kSource, kTarget, kAux };

std::string DomainKindName(DomainKind k);
DomainKind DomainKindFromName(const std::string& name);

// Structural live/spoof pattern. Live frames are smooth low-frequency blob
// fields; spoof frames add a periodic high-frequency grid on top of the same
// content, so the class evidence sits in a band that global style transforms
// leave alone.
struct ClassSignal {
  double blob_scale = 5.0;     // gaussian bump radius, pixels
  int blob_count = 4;
  double grid_amplitude = 0.08;
  int grid_period = 2;
};

// Global low-level appearance of a domain: per-channel affine color map,
// content blur, sensor noise. Applied after the class pattern is formed;
// blur acts on the content band only so spoof evidence survives style shifts.
struct StyleSignal {
  double gain[3] = {1.0, 1.0, 1.0};
  double bias[3] = {0.0, 0.0, 0.0};
  double blur_sigma = 0.0;
  double noise_sigma = 0.01;
};

struct DomainSpec {
  std::string name = "source";
  DomainKind kind = DomainKind::kSource;
  ClassSignal class_signal;
  StyleSignal style_signal;
  int image_height = 32;
  int image_width = 32;
  int n_subjects = 20;
  int frames_per_subject = 20;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

struct Sample {
  ImageBuf image;
  int label = kSpoof;  // 1 = live, 0 = spoof
  DomainKind domain = DomainKind::kSource;
  std::string domain_name;
  int subject_id = 0;
};

// Immutable after construction. `splits` maps split name -> sample indices;
// split index lists are disjoint and subject-disjoint. `eval_only` marks
// held-out data that must never reach a training batch.
struct DomainDataset {
  std::string name;
  DomainKind kind = DomainKind::kSource;
  std::vector<Sample> samples;
  std::map<std::string, std::vector<int>> splits;
  DomainSpec spec;
  uint64_t seed = 0;
  bool eval_only = false;

  // Indices eligible for training: the "train" split if present, else all.
  std::vector<int> TrainPool() const;
  std::vector<int> SplitOrAll(const std::string& split) const;
  // Subset of `pool` carrying `label`.
  std::vector<int> PoolByLabel(const std::vector<int>& pool, int label) const;
  std::vector<int> SubjectsInSplit(const std::string& split) const;
};

struct BatchSizes {
  int source = 64;
  int target = 4;
  int aux = 8;
};

struct BatchSlice {
  DomainKind kind = DomainKind::kSource;
  const DomainDataset* dataset = nullptr;
  std::vector<int> indices;

  int CountLabel(int label) const;
};

// One training batch: per-domain slices with exact live/spoof balance.
struct Batch {
  std::vector<BatchSlice> slices;

  int TotalSize() const;
  const BatchSlice* Find(DomainKind k) const;
};

// Deterministic synthetic domain. |samples| = 2 * n_subjects * frames
// (per subject: `frames` live + `frames` spoof). Per-sample seeds derive
// from (seed, subject, slot), so output is independent of generation order.
DomainDataset GenerateDomain(const DomainSpec& spec, uint64_t seed);

// Subject-disjoint split. Fractions must sum to 1 within 1e-9; subjects are
// shuffled under `seed` and allotted by floor + largest remainder.
DomainDataset SplitDataset(const DomainDataset& ds,
                           const std::vector<std::pair<std::string, double>>& fractions,
                           uint64_t seed);

// Few-shot selection: all frames of exactly `n_subjects` training subjects.
// Everything else lands in the held-out dataset (eval_only = true).
std::pair<DomainDataset, DomainDataset> MakeFewshotTarget(
    const DomainDataset& ds, int n_subjects, uint64_t seed);

struct IndexPair {
  int a = 0;
  int b = 0;
};

// Same-class cross-domain pairs, uniform per class with replacement. Only
// (source, target) and (target, aux) domain combinations are legal.
std::vector<IndexPair> SampleSameClassPairs(const DomainDataset& a,
                                            const DomainDataset& b, int count,
                                            uint64_t seed);

// Fixed-composition batch: sizes.{source,target,aux} samples per domain,
// exactly half live / half spoof within each slice, drawn with replacement
// from each dataset's train pool. A zero size skips that domain.
Batch ComposeBatch(const DomainDataset* src, const DomainDataset* tgt,
                   const DomainDataset* aux, const BatchSizes& sizes,
                   uint64_t seed);

}  // namespace fsde

#endif  // FSDE_SYNTHDATA_HPP
