// core/src/bench.cpp

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

#include "fsde/bench.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "fsde/rng.hpp"

namespace fsde {

namespace {

constexpr uint64_t kDataStream = 0x44415441u;      // dataset generation
constexpr uint64_t kSplitDrawStream = 0x53504c54u; // source split shuffle
constexpr uint64_t kFewshotDrawStream = 0x4653u;   // few-shot subject draw
constexpr uint64_t kAuxDrawStream = 0x4155u;       // aux pairing
constexpr uint64_t kRunInitStream = 0x494e4954u;   // per-run fresh parameters

Aggregate AggregateMetric(const std::vector<MetricsReport>& reports,
                          const std::string& domain,
                          double DomainMetrics::*member) {
  std::vector<double> v;
  for (const MetricsReport& r : reports) v.push_back(r.per_domain.at(domain).*member);
  return AggregateValues(v);
}

MethodTargetResult MakeRow(const ProtocolSpec& spec, const std::string& method,
                           const std::string& target,
                           const std::string& src_name,
                           std::vector<MetricsReport> reports) {
  MethodTargetResult row;
  row.method = method;
  row.target = target;
  row.reports.seeds = spec.seeds;
  row.reports.reports = std::move(reports);
  row.mean_source_acer =
      AggregateMetric(row.reports.reports, src_name, &DomainMetrics::acer).mean;
  row.mean_target_hter =
      AggregateMetric(row.reports.reports, target, &DomainMetrics::hter).mean;
  return row;
}

void WriteTable(const std::string& path, const ProtocolResult& result,
                const std::string& src_name) {
  std::ostringstream csv;
  csv << "target,method,apcer,bpcer,acer,hter\n";
  for (const MethodTargetResult& row : result.rows) {
    const std::vector<MetricsReport>& r = row.reports.reports;
    const Aggregate apcer = AggregateMetric(r, src_name, &DomainMetrics::apcer);
    const Aggregate bpcer = AggregateMetric(r, src_name, &DomainMetrics::bpcer);
    const Aggregate acer = AggregateMetric(r, src_name, &DomainMetrics::acer);
    const Aggregate hter = AggregateMetric(r, row.target, &DomainMetrics::hter);
    csv << row.target << "," << row.method << ","
        << FormatPercentCell(apcer.mean, apcer.stddev) << ","
        << FormatPercentCell(bpcer.mean, bpcer.stddev) << ","
        << FormatPercentCell(acer.mean, acer.stddev) << ","
        << FormatPercentCell(hter.mean, hter.stddev) << "\n";
  }
  WriteTextFile(path, csv.str());
}

// Concatenates per-target datasets into one trainable pool (kind and
// per-sample tags preserved, one "train" split over everything).
DomainDataset PoolDatasets(const std::vector<DomainDataset>& parts,
                           DomainKind kind, const std::string& name,
                           uint64_t seed) {
  if (parts.empty()) throw std::invalid_argument("nothing to pool");
  DomainDataset pooled;
  pooled.name = name;
  pooled.kind = kind;
  pooled.spec = parts[0].spec;
  pooled.spec.name = name;
  pooled.seed = seed;
  for (const DomainDataset& p : parts) {
    for (const Sample& s : p.samples) pooled.samples.push_back(s);
  }
  std::vector<int> all(pooled.samples.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  pooled.splits["train"] = all;
  return pooled;
}

}  // namespace

DomainDataset BuildSourceDataset(const ProtocolSpec& spec) {
  DomainDataset full =
      GenerateDomain(spec.source, DeriveSeed(spec.data_seed, {kDataStream, 0}));
  return SplitDataset(full, spec.source_split,
                      DeriveSeed(spec.data_seed, {kSplitDrawStream}));
}

std::vector<DomainDataset> BuildTargetDatasets(const ProtocolSpec& spec) {
  std::vector<DomainDataset> out;
  for (size_t i = 0; i < spec.targets.size(); ++i) {
    out.push_back(GenerateDomain(
        spec.targets[i],
        DeriveSeed(spec.data_seed, {kDataStream, 1 + static_cast<uint64_t>(i)})));
  }
  return out;
}

uint64_t FewshotSeed(const ProtocolSpec& spec, uint64_t run_seed,
                     size_t target_idx) {
  if (spec.fixed_fewshot) return spec.fewshot_seed;
  return DeriveSeed(run_seed,
                    {kFewshotDrawStream, static_cast<uint64_t>(target_idx)});
}

uint64_t AuxPairSeed(uint64_t run_seed, size_t target_idx) {
  return DeriveSeed(run_seed,
                    {kAuxDrawStream, static_cast<uint64_t>(target_idx)});
}

PretrainResult PretrainForRun(const ProtocolSpec& spec,
                              const DomainDataset& src, uint64_t seed,
                              const std::string& dir) {
  TrainConfig cfg = spec.train;
  cfg.steps = spec.pretrain_steps;
  cfg.seed = seed;
  PretrainResult pre = PretrainSource(src, spec.arch, cfg);
  EnsureDir(dir);
  SaveStepLog(dir + "/step_log.csv", pre.log);
  SaveBundle(dir + "/checkpoint", pre.models, cfg.steps, "pretrain");
  return pre;
}

MetricsReport RunAdaptation(const ProtocolSpec& spec,
                            const std::string& run_dir,
                            const std::string& method, uint64_t seed,
                            uint64_t init_salt, const DomainDataset& src,
                            const DomainDataset* fewshot,
                            const DomainDataset* aux,
                            const std::vector<const DomainDataset*>& heldouts,
                            const PretrainResult& pre) {
  TrainConfig cfg = MethodTrainConfig(method, spec.train);
  cfg.seed = seed;
  ModelBundle models =
      BuildModels(spec.arch, DeriveSeed(seed, {kRunInitStream, init_salt}));
  if (cfg.warm_start) {
    models.g.CopyParamsFrom(pre.models.g);
    models.h.CopyParamsFrom(pre.models.h);
  }
  const TeacherSnapshot* teacher = cfg.use_lfc ? &pre.teacher : nullptr;
  Trainer trainer(&models, teacher, &src, fewshot, aux, cfg);
  trainer.Run();

  EnsureDir(run_dir);
  SaveStepLog(run_dir + "/step_log.csv", trainer.Log());
  SaveBundle(run_dir + "/checkpoint", models, trainer.State().step,
             StageName(trainer.State().stage));

  ScoreSet val = ScoreDataset(&models.g, &models.h, src, "val");
  const double tau = SelectThreshold(val);
  MetricsReport report = Evaluate(&models.g, &models.h, tau, src, "test",
                                  heldouts, "");
  SaveScoreCsv(run_dir + "/scores_source_val.csv", val);
  SaveScoreCsv(run_dir + "/scores_source_test.csv",
               ScoreDataset(&models.g, &models.h, src, "test"));
  for (const DomainDataset* ho : heldouts) {
    SaveScoreCsv(run_dir + "/scores_" + ho->name + ".csv",
                 ScoreDataset(&models.g, &models.h, *ho, ""));
  }
  SeedReports single;
  single.seeds = {seed};
  single.reports = {report};
  SaveReportJson(run_dir + "/report.json", single);
  return report;
}

void ProtocolSpec::Validate() const {
  if (targets.empty()) throw std::invalid_argument("protocol needs >= 1 target");
  if (seeds.empty()) throw std::invalid_argument("protocol needs >= 1 seed");
  if (methods.empty()) throw std::invalid_argument("protocol needs >= 1 method");
  if (fewshot_subjects < 1) {
    throw std::invalid_argument("fewshot_subjects must be >= 1");
  }
  if (pretrain_steps <= 0) {
    throw std::invalid_argument("pretrain_steps must be positive");
  }
  source.Validate();
  if (source.kind != DomainKind::kSource) {
    throw std::invalid_argument("protocol source spec must have kind source");
  }
  std::set<std::string> names;
  for (const DomainSpec& t : targets) {
    t.Validate();
    if (t.kind != DomainKind::kTarget) {
      throw std::invalid_argument("target spec '" + t.name +
                                  "' must have kind target");
    }
    if (!names.insert(t.name).second) {
      throw std::invalid_argument("duplicate target name '" + t.name + "'");
    }
  }
  if (!ablation_target.empty() && names.count(ablation_target) == 0) {
    throw std::invalid_argument("ablation_target '" + ablation_target +
                                "' is not a configured target");
  }
  arch.Validate();
  stylizer.Validate();
  train.Validate();
  for (const std::string& m : methods) MethodTrainConfig(m, train);
}

ProtocolSpec ProtocolFromConfig(const Config& c) {
  ProtocolSpec s;
  s.name = c.GetString("protocol.kind", s.name);
  DomainSpec src_default;
  src_default.kind = DomainKind::kSource;
  src_default.name = "source";
  s.source = DomainSpecFromConfig(c, "source.", src_default);
  s.targets.clear();
  for (const std::string& name : c.GetList("protocol.targets", "near,mid,far")) {
    DomainSpec td;
    td.kind = DomainKind::kTarget;
    td.name = name;
    s.targets.push_back(DomainSpecFromConfig(c, "target." + name + ".", td));
  }
  s.fewshot_subjects = c.GetInt("protocol.fewshot_subjects", s.fewshot_subjects);
  s.seeds = c.GetUint64List("protocol.seeds", "1,2,3");
  s.methods = c.GetList("protocol.methods", "source_only,joint,sasa");
  s.arch = ArchFromConfig(c);
  s.stylizer = StylizerFromConfig(c);
  s.train = TrainFromConfig(c);
  s.pretrain_steps = c.GetInt("protocol.pretrain_steps", s.pretrain_steps);
  s.data_seed = c.GetUint64("protocol.data_seed", s.data_seed);
  s.source_split = {{"train", c.GetDouble("protocol.split_train", 0.6)},
                    {"val", c.GetDouble("protocol.split_val", 0.2)},
                    {"test", c.GetDouble("protocol.split_test", 0.2)}};
  s.fixed_fewshot = c.GetBool("protocol.fixed_fewshot", s.fixed_fewshot);
  s.fewshot_seed = c.GetUint64("protocol.fewshot_seed", s.fewshot_seed);
  s.ablation_target = c.GetString("protocol.ablation_target", s.ablation_target);
  return s;
}

TrainConfig MethodTrainConfig(const std::string& method, TrainConfig base) {
  TrainConfig t = base;
  auto set = [&t](bool tgt, bool aux, bool lfc, bool cont, bool adv,
                  bool prog) {
    t.use_target = tgt;
    t.use_aux = aux;
    t.use_lfc = lfc;
    t.use_cont = cont;
    t.use_adv = adv;
    t.progressive = prog;
  };
  if (method == "source_only") {
    set(false, false, false, false, false, true);
  } else if (method == "joint") {
    set(true, false, false, false, false, true);
  } else if (method == "aux") {
    set(true, true, false, false, false, true);
  } else if (method == "aux_lfc") {
    set(true, true, true, false, false, true);
  } else if (method == "aux_cont") {
    set(true, true, false, true, false, true);
  } else if (method == "aux_lfc_cont") {
    set(true, true, true, true, false, true);
  } else if (method == "aux_lfc_adv") {
    set(true, true, true, false, true, true);
  } else if (method == "sasa") {
    set(true, true, true, true, true, true);
  } else if (method == "sasa_nonprog") {
    set(true, true, true, true, true, false);
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  return t;
}

const MethodTargetResult& ProtocolResult::Find(const std::string& method,
                                               const std::string& target) const {
  for (const MethodTargetResult& row : rows) {
    if (row.method == method && row.target == target) return row;
  }
  throw std::out_of_range("no result row for (" + method + ", " + target + ")");
}

ProtocolResult RunProtocolSt(const ProtocolSpec& spec,
                             const std::string& out_dir) {
  spec.Validate();
  EnsureDir(out_dir);
  const DomainDataset src = BuildSourceDataset(spec);
  const std::vector<DomainDataset> tgt_full = BuildTargetDatasets(spec);
  const size_t nm = spec.methods.size(), nt = spec.targets.size();

  std::vector<std::vector<std::vector<MetricsReport>>> acc(
      nm, std::vector<std::vector<MetricsReport>>(nt));
  for (uint64_t seed : spec.seeds) {
    const std::string seed_dir = std::to_string(seed);
    std::vector<DomainDataset> fewshot, heldout, aux;
    std::vector<const DomainDataset*> heldout_ptrs;
    for (size_t ti = 0; ti < nt; ++ti) {
      auto pair = MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                    FewshotSeed(spec, seed, ti));
      fewshot.push_back(std::move(pair.first));
      heldout.push_back(std::move(pair.second));
    }
    for (size_t ti = 0; ti < nt; ++ti) heldout_ptrs.push_back(&heldout[ti]);
    const PretrainResult pre =
        PretrainForRun(spec, src, seed, out_dir + "/pretrain/" + seed_dir);
    for (size_t ti = 0; ti < nt; ++ti) {
      aux.push_back(
          BuildAuxDomain(src, fewshot[ti], spec.stylizer, AuxPairSeed(seed, ti)));
    }
    for (size_t mi = 0; mi < nm; ++mi) {
      const std::string& method = spec.methods[mi];
      if (method == "source_only") {
        MetricsReport report = RunAdaptation(
            spec, out_dir + "/" + method + "/" + seed_dir, method, seed,
            1000 * mi + 999, src, nullptr, nullptr, heldout_ptrs, pre);
        for (size_t ti = 0; ti < nt; ++ti) acc[mi][ti].push_back(report);
        continue;
      }
      for (size_t ti = 0; ti < nt; ++ti) {
        const TrainConfig mc = MethodTrainConfig(method, spec.train);
        MetricsReport report = RunAdaptation(
            spec,
            out_dir + "/" + method + "/" + seed_dir + "/" + heldout[ti].name,
            method, seed, 1000 * mi + ti, src, &fewshot[ti],
            mc.use_aux ? &aux[ti] : nullptr, {&heldout[ti]}, pre);
        acc[mi][ti].push_back(report);
      }
    }
  }

  ProtocolResult result;
  for (size_t mi = 0; mi < nm; ++mi) {
    for (size_t ti = 0; ti < nt; ++ti) {
      MethodTargetResult row = MakeRow(spec, spec.methods[mi],
                                       spec.targets[ti].name, src.name,
                                       acc[mi][ti]);
      SaveReportJson(out_dir + "/" + spec.methods[mi] + "/report_" +
                         spec.targets[ti].name + ".json",
                     row.reports);
      result.rows.push_back(std::move(row));
    }
  }
  WriteTable(out_dir + "/table.csv", result, src.name);
  return result;
}

ProtocolResult RunProtocolMt(const ProtocolSpec& spec,
                             const std::string& out_dir) {
  spec.Validate();
  EnsureDir(out_dir);
  const DomainDataset src = BuildSourceDataset(spec);
  const std::vector<DomainDataset> tgt_full = BuildTargetDatasets(spec);
  const size_t nm = spec.methods.size(), nt = spec.targets.size();

  // per method: per target plus the cross-target average pseudo-domain
  std::vector<std::vector<std::vector<MetricsReport>>> acc(
      nm, std::vector<std::vector<MetricsReport>>(nt + 1));
  for (uint64_t seed : spec.seeds) {
    const std::string seed_dir = std::to_string(seed);
    std::vector<DomainDataset> fewshot, heldout, aux;
    std::vector<const DomainDataset*> heldout_ptrs;
    for (size_t ti = 0; ti < nt; ++ti) {
      auto pair = MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                    FewshotSeed(spec, seed, ti));
      fewshot.push_back(std::move(pair.first));
      heldout.push_back(std::move(pair.second));
    }
    for (size_t ti = 0; ti < nt; ++ti) heldout_ptrs.push_back(&heldout[ti]);
    const PretrainResult pre =
        PretrainForRun(spec, src, seed, out_dir + "/pretrain/" + seed_dir);
    for (size_t ti = 0; ti < nt; ++ti) {
      aux.push_back(
          BuildAuxDomain(src, fewshot[ti], spec.stylizer, AuxPairSeed(seed, ti)));
    }
    const DomainDataset pooled_t =
        PoolDatasets(fewshot, DomainKind::kTarget, "targets_pooled", seed);
    const DomainDataset pooled_a =
        PoolDatasets(aux, DomainKind::kAux, "aux_pooled", seed);
    for (size_t mi = 0; mi < nm; ++mi) {
      const std::string& method = spec.methods[mi];
      const TrainConfig mc = MethodTrainConfig(method, spec.train);
      MetricsReport report = RunAdaptation(
          spec, out_dir + "/" + method + "/" + seed_dir, method, seed,
          1000 * mi + 500, src, mc.use_target ? &pooled_t : nullptr,
          mc.use_aux ? &pooled_a : nullptr, heldout_ptrs, pre);
      // cross-target mean as a pseudo-domain, so it aggregates like the rest
      DomainMetrics avg;
      for (size_t ti = 0; ti < nt; ++ti) {
        const DomainMetrics& m = report.per_domain.at(heldout[ti].name);
        avg.apcer += m.apcer / static_cast<double>(nt);
        avg.bpcer += m.bpcer / static_cast<double>(nt);
        avg.acer += m.acer / static_cast<double>(nt);
        avg.hter += m.hter / static_cast<double>(nt);
      }
      report.per_domain["target_avg"] = avg;
      for (size_t ti = 0; ti < nt; ++ti) acc[mi][ti].push_back(report);
      acc[mi][nt].push_back(report);
    }
  }

  ProtocolResult result;
  for (size_t mi = 0; mi < nm; ++mi) {
    for (size_t ti = 0; ti <= nt; ++ti) {
      const std::string target =
          ti < nt ? spec.targets[ti].name : std::string("target_avg");
      MethodTargetResult row =
          MakeRow(spec, spec.methods[mi], target, src.name, acc[mi][ti]);
      SaveReportJson(
          out_dir + "/" + spec.methods[mi] + "/report_" + target + ".json",
          row.reports);
      result.rows.push_back(std::move(row));
    }
  }
  WriteTable(out_dir + "/table.csv", result, src.name);
  return result;
}

std::vector<AblationRow> RunAblation(const ProtocolSpec& spec,
                                     const std::string& out_dir) {
  spec.Validate();
  EnsureDir(out_dir);
  const DomainDataset src = BuildSourceDataset(spec);
  const std::vector<DomainDataset> tgt_full = BuildTargetDatasets(spec);
  size_t ti = 0;
  if (!spec.ablation_target.empty()) {
    while (spec.targets[ti].name != spec.ablation_target) ++ti;
  }

  // Table rows: the term matrix (source-only through the full method) plus
  // the non-progressive variant of the full method.
  const std::vector<std::string> row_methods = {
      "source_only", "joint",        "aux",          "aux_lfc",  "aux_cont",
      "aux_lfc_cont", "aux_lfc_adv", "sasa",         "sasa_nonprog"};

  std::vector<std::vector<MetricsReport>> acc(row_methods.size());
  for (uint64_t seed : spec.seeds) {
    const std::string seed_dir = std::to_string(seed);
    // the ablation compares methods on one fixed few-shot draw
    auto pair = MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                  spec.fewshot_seed);
    const DomainDataset& fewshot = pair.first;
    const DomainDataset& heldout = pair.second;
    const PretrainResult pre =
        PretrainForRun(spec, src, seed, out_dir + "/pretrain/" + seed_dir);
    const DomainDataset aux =
        BuildAuxDomain(src, fewshot, spec.stylizer, AuxPairSeed(seed, ti));
    for (size_t mi = 0; mi < row_methods.size(); ++mi) {
      const TrainConfig mc = MethodTrainConfig(row_methods[mi], spec.train);
      MetricsReport report = RunAdaptation(
          spec, out_dir + "/" + row_methods[mi] + "/" + seed_dir,
          row_methods[mi], seed, 1000 * mi + 7, src,
          mc.use_target ? &fewshot : nullptr, mc.use_aux ? &aux : nullptr,
          {&heldout}, pre);
      acc[mi].push_back(report);
    }
  }

  const std::string target_name = tgt_full[ti].name;
  std::vector<AblationRow> rows;
  std::ostringstream csv;
  csv << "method,apcer,bpcer,acer,hter\n";
  for (size_t mi = 0; mi < row_methods.size(); ++mi) {
    const TrainConfig mc = MethodTrainConfig(row_methods[mi], spec.train);
    AblationRow row;
    row.name = row_methods[mi];
    row.use_target = mc.use_target;
    row.use_aux = mc.use_aux;
    row.use_lfc = mc.use_lfc;
    row.use_cont = mc.use_cont;
    row.use_adv = mc.use_adv;
    row.progressive = mc.progressive;
    row.reports.seeds = spec.seeds;
    row.reports.reports = acc[mi];
    row.mean_source_acer =
        AggregateMetric(acc[mi], src.name, &DomainMetrics::acer).mean;
    row.mean_target_hter =
        AggregateMetric(acc[mi], target_name, &DomainMetrics::hter).mean;
    SaveReportJson(out_dir + "/" + row.name + "/report.json", row.reports);
    const Aggregate apcer = AggregateMetric(acc[mi], src.name, &DomainMetrics::apcer);
    const Aggregate bpcer = AggregateMetric(acc[mi], src.name, &DomainMetrics::bpcer);
    const Aggregate acer = AggregateMetric(acc[mi], src.name, &DomainMetrics::acer);
    const Aggregate hter = AggregateMetric(acc[mi], target_name, &DomainMetrics::hter);
    csv << row.name << "," << FormatPercentCell(apcer.mean, apcer.stddev) << ","
        << FormatPercentCell(bpcer.mean, bpcer.stddev) << ","
        << FormatPercentCell(acer.mean, acer.stddev) << ","
        << FormatPercentCell(hter.mean, hter.stddev) << "\n";
    rows.push_back(std::move(row));
  }
  WriteTextFile(out_dir + "/table.csv", csv.str());
  return rows;
}

}  // namespace fsde
