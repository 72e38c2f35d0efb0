// core/include/fsde/bench.hpp

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

#ifndef FSDE_BENCH_HPP_
#define FSDE_BENCH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fsde/config.hpp"
#include "fsde/evalmetrics.hpp"
#include "fsde/io.hpp"
#include "fsde/nets.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/synthdata.hpp"
#include "fsde/trainer.hpp"

namespace fsde {

// A full experiment: one source domain, one or more targets at increasing
// style distance, a seed list, and the method set to compare.  Datasets are
// generated from data_seed (fixed across run seeds); run seeds drive
// pretraining, few-shot draws, aux pairing, and training.
struct ProtocolSpec {
  std::string name = "st";  // "st" | "mt" | "ablation"
  DomainSpec source;
  std::vector<DomainSpec> targets;
  int fewshot_subjects = 1;  // few-shot rule: every frame of n subjects
  std::vector<uint64_t> seeds = {1, 2, 3};
  std::vector<std::string> methods = {"source_only", "joint", "sasa"};
  ArchConfig arch;
  StylizerConfig stylizer;
  TrainConfig train;        // per-method adaptation budget and weights
  int pretrain_steps = 800;
  uint64_t data_seed = 77;
  std::vector<std::pair<std::string, double>> source_split = {
      {"train", 0.6}, {"val", 0.2}, {"test", 0.2}};
  bool fixed_fewshot = false;  // reuse one few-shot draw across seeds
  uint64_t fewshot_seed = 11;  // the draw used when fixed_fewshot is set
  std::string ablation_target;  // target name; empty = first target

  void Validate() const;
};

ProtocolSpec ProtocolFromConfig(const Config& c);

// Dataset derivations shared by the protocol runners and the command-line
// pipeline, so artifacts produced step-by-step match an in-process run.
DomainDataset BuildSourceDataset(const ProtocolSpec& spec);  // split applied
std::vector<DomainDataset> BuildTargetDatasets(const ProtocolSpec& spec);
uint64_t FewshotSeed(const ProtocolSpec& spec, uint64_t run_seed,
                     size_t target_idx);
uint64_t AuxPairSeed(uint64_t run_seed, size_t target_idx);

// Source pretraining with the protocol's artifact layout (step log plus a
// parameter bundle under `dir`).
PretrainResult PretrainForRun(const ProtocolSpec& spec,
                              const DomainDataset& src, uint64_t seed,
                              const std::string& dir);

// One adaptation run: warm-start from the pretrained model, train with the
// method's term set, pick the equal-error threshold on source validation,
// and evaluate source test plus every held-out target at that threshold.
// `init_salt` keeps per-(method, target) fresh-parameter draws distinct.
MetricsReport RunAdaptation(const ProtocolSpec& spec,
                            const std::string& run_dir,
                            const std::string& method, uint64_t seed,
                            uint64_t init_salt, const DomainDataset& src,
                            const DomainDataset* fewshot,
                            const DomainDataset* aux,
                            const std::vector<const DomainDataset*>& heldouts,
                            const PretrainResult& pre);

// Resolves a method name to its trainer flags.  Known names: source_only,
// joint, aux, aux_lfc, aux_cont, aux_lfc_cont, aux_lfc_adv, sasa,
// sasa_nonprog.  Throws on unknown names.
TrainConfig MethodTrainConfig(const std::string& method, TrainConfig base);

struct MethodTargetResult {
  std::string method;
  std::string target;  // target dataset name; "target_avg" for the MT mean
  SeedReports reports;
  double mean_source_acer = 0.0;
  double mean_target_hter = 0.0;
};

struct ProtocolResult {
  std::vector<MethodTargetResult> rows;

  const MethodTargetResult& Find(const std::string& method,
                                 const std::string& target) const;
};

// Single-target protocol: each target is adapted to independently.
// Artifacts land under <out_dir>/<method>/<seed>/... with seed-aggregated
// reports at <out_dir>/<method>/report_<target>.json and a summary table at
// <out_dir>/table.csv.
ProtocolResult RunProtocolSt(const ProtocolSpec& spec,
                             const std::string& out_dir);

// Multi-target protocol: one run per (method, seed) on the pooled few-shot
// sets with per-target aux domains pooled; reports per-target HTER plus the
// "target_avg" row.
ProtocolResult RunProtocolMt(const ProtocolSpec& spec,
                             const std::string& out_dir);

struct AblationRow {
  std::string name;
  bool use_target = false, use_aux = false, use_lfc = false, use_cont = false,
       use_adv = false, progressive = true;
  SeedReports reports;
  double mean_source_acer = 0.0;
  double mean_target_hter = 0.0;
};

// The fixed ablation matrix (8 distinct term configurations plus the
// non-progressive variant of the full method), run on one target with a
// fixed few-shot draw.
std::vector<AblationRow> RunAblation(const ProtocolSpec& spec,
                                     const std::string& out_dir);

}  // namespace fsde

#endif  // FSDE_BENCH_HPP_
