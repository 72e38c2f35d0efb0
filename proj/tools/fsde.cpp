// tools/fsde.cpp

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

// Command-line front end.  Every subcommand shares --config / --seed / --out
// / --set, layers the overrides onto the config file, and writes the merged
// snapshot to <out>/config_used.cfg before doing any work.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsde/bench.hpp"
#include "fsde/config.hpp"
#include "fsde/evalmetrics.hpp"
#include "fsde/io.hpp"
#include "plots.hpp"

namespace fsde {
namespace {

struct SharedOpts {
  std::string config_path;
  std::string out = "out";
  uint64_t seed = 1;
  bool seed_given = false;
  std::vector<std::string> sets;
};

Config MergedConfig(const SharedOpts& o, const std::string& command) {
  Config c;
  if (!o.config_path.empty()) c = Config::FromFile(o.config_path);
  for (const std::string& kv : o.sets) c.SetKv(kv);
  if (o.seed_given) c.Set("run.seed", std::to_string(o.seed));
  c.Set("run.command", command);
  c.Set("run.out", o.out);
  EnsureDir(o.out);
  c.SaveSnapshot(o.out + "/config_used.cfg");
  return c;
}

size_t TargetIndex(const ProtocolSpec& spec, const std::string& name) {
  if (name.empty()) return 0;
  for (size_t i = 0; i < spec.targets.size(); ++i) {
    if (spec.targets[i].name == name) return i;
  }
  throw std::invalid_argument("unknown target domain: " + name);
}

// Mirrors the protocol runners' per-(method, target) init salt so a
// standalone run reproduces the protocol's parameter draw when the config
// lists the method.
uint64_t MethodSalt(const ProtocolSpec& spec, const std::string& method,
                    size_t ti) {
  size_t mi = 0;
  for (size_t i = 0; i < spec.methods.size(); ++i) {
    if (spec.methods[i] == method) {
      mi = i;
      break;
    }
  }
  return method == "source_only" ? 1000 * mi + 999 : 1000 * mi + ti;
}

void PrintReport(const MetricsReport& rep) {
  std::printf("threshold %.6f\n", rep.threshold);
  for (const auto& [name, m] : rep.per_domain) {
    std::printf("%-18s APCER %6.2f  BPCER %6.2f  ACER %6.2f  HTER %6.2f\n",
                name.c_str(), 100.0 * m.apcer, 100.0 * m.bpcer,
                100.0 * m.acer, 100.0 * m.hter);
  }
}

int CmdGenData(const Config& c, const SharedOpts& o) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const DomainDataset src = BuildSourceDataset(spec);
  SaveDataset(o.out + "/" + src.name, src);
  std::printf("wrote %s: %zu samples, splits", src.name.c_str(),
              src.samples.size());
  for (const auto& [split, idx] : src.splits) {
    std::printf(" %s=%zu", split.c_str(), idx.size());
  }
  std::printf("\n");
  for (const DomainDataset& t : BuildTargetDatasets(spec)) {
    SaveDataset(o.out + "/" + t.name, t);
    std::printf("wrote %s: %zu samples\n", t.name.c_str(), t.samples.size());
  }
  return 0;
}

int CmdAugment(const Config& c, const SharedOpts& o, uint64_t seed) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const size_t ti = TargetIndex(spec, c.GetString("target", ""));
  const DomainDataset src = BuildSourceDataset(spec);
  const DomainDataset tgt_full = BuildTargetDatasets(spec).at(ti);
  auto pair = MakeFewshotTarget(tgt_full, spec.fewshot_subjects,
                                FewshotSeed(spec, seed, ti));
  std::vector<AuxProvenance> prov;
  const DomainDataset aux = BuildAuxDomain(src, pair.first, spec.stylizer,
                                           AuxPairSeed(seed, ti), &prov);
  SaveDataset(o.out + "/fewshot_" + pair.first.name, pair.first);
  SaveDataset(o.out + "/heldout_" + pair.second.name, pair.second);
  SaveDataset(o.out + "/" + aux.name, aux);
  SaveProvenance(o.out + "/provenance.csv", prov);
  RenderContactSheet(o.out + "/contact_sheet.bmp", src, pair.first, aux, prov);
  std::printf("fewshot %s: %zu samples from %d subject(s)\n",
              pair.first.name.c_str(), pair.first.samples.size(),
              spec.fewshot_subjects);
  std::printf("wrote %s: %zu stylized samples, provenance.csv, "
              "contact_sheet.bmp\n",
              aux.name.c_str(), aux.samples.size());
  return 0;
}

int CmdPretrain(const Config& c, const SharedOpts& o, uint64_t seed) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const DomainDataset src = BuildSourceDataset(spec);
  PretrainResult pre = PretrainForRun(spec, src, seed, o.out);
  ScoreSet val = ScoreDataset(&pre.models.g, &pre.models.h, src, "val");
  const double tau = SelectThreshold(val);
  MetricsReport rep =
      Evaluate(&pre.models.g, &pre.models.h, tau, src, "test", {}, "");
  std::printf("pretrained %d steps on %s\n", spec.pretrain_steps,
              src.name.c_str());
  PrintReport(rep);
  return 0;
}

// `train` and `baseline` share this; they differ only in the default method.
int CmdTrain(const Config& c, const SharedOpts& o, uint64_t seed,
             const std::string& default_method) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const std::string method = c.GetString("method", default_method);
  const TrainConfig mc = MethodTrainConfig(method, spec.train);
  const DomainDataset src = BuildSourceDataset(spec);
  const std::vector<DomainDataset> tgt_full = BuildTargetDatasets(spec);

  PretrainResult pre;
  const std::string pdir = c.GetString("pretrain_dir", "");
  if (!pdir.empty()) {
    pre.models = LoadBundle(pdir);
    pre.teacher = TeacherSnapshot(pre.models.g, pre.models.arch);
  } else {
    pre = PretrainForRun(spec, src, seed, o.out + "/pretrain");
  }

  MetricsReport rep;
  if (method == "source_only") {
    std::vector<DomainDataset> heldout;
    for (size_t ti = 0; ti < tgt_full.size(); ++ti) {
      heldout.push_back(MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                          FewshotSeed(spec, seed, ti))
                            .second);
    }
    std::vector<const DomainDataset*> ptrs;
    for (const DomainDataset& h : heldout) ptrs.push_back(&h);
    rep = RunAdaptation(spec, o.out + "/run", method, seed,
                        MethodSalt(spec, method, 0), src, nullptr, nullptr,
                        ptrs, pre);
  } else {
    const size_t ti = TargetIndex(spec, c.GetString("target", ""));
    auto pair = MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                  FewshotSeed(spec, seed, ti));
    DomainDataset aux;
    if (mc.use_aux) {
      aux = BuildAuxDomain(src, pair.first, spec.stylizer,
                           AuxPairSeed(seed, ti));
    }
    rep = RunAdaptation(spec, o.out + "/run", method, seed,
                        MethodSalt(spec, method, ti), src,
                        mc.use_target ? &pair.first : nullptr,
                        mc.use_aux ? &aux : nullptr, {&pair.second}, pre);
  }
  std::printf("%s: trained %d steps (seed %llu)\n", method.c_str(),
              spec.train.steps, static_cast<unsigned long long>(seed));
  PrintReport(rep);
  return 0;
}

int CmdEval(const Config& c, const SharedOpts& o, uint64_t seed) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const std::string ckpt = c.GetString("checkpoint", "");
  if (ckpt.empty()) {
    throw std::invalid_argument(
        "eval needs --set checkpoint=DIR pointing at a saved model bundle");
  }
  ModelBundle models = LoadBundle(ckpt);
  const DomainDataset src = BuildSourceDataset(spec);
  const std::vector<DomainDataset> tgt_full = BuildTargetDatasets(spec);
  std::vector<DomainDataset> heldout;
  for (size_t ti = 0; ti < tgt_full.size(); ++ti) {
    heldout.push_back(MakeFewshotTarget(tgt_full[ti], spec.fewshot_subjects,
                                        FewshotSeed(spec, seed, ti))
                          .second);
  }
  std::vector<const DomainDataset*> ptrs;
  for (const DomainDataset& h : heldout) ptrs.push_back(&h);

  ScoreSet val = ScoreDataset(&models.g, &models.h, src, "val");
  const double tau = SelectThreshold(val);
  MetricsReport rep =
      Evaluate(&models.g, &models.h, tau, src, "test", ptrs, "");
  SaveScoreCsv(o.out + "/scores_source_val.csv", val);
  SaveScoreCsv(o.out + "/scores_source_test.csv",
               ScoreDataset(&models.g, &models.h, src, "test"));
  for (const DomainDataset& h : heldout) {
    SaveScoreCsv(o.out + "/scores_" + h.name + ".csv",
                 ScoreDataset(&models.g, &models.h, h, ""));
  }
  SeedReports single;
  single.seeds = {seed};
  single.reports = {rep};
  SaveReportJson(o.out + "/report.json", single);
  PrintReport(rep);
  return 0;
}

int CmdProtocol(const Config& c, const SharedOpts& o) {
  const ProtocolSpec spec = ProtocolFromConfig(c);
  const std::string rdir = o.out + "/results/" + spec.name;
  if (spec.name == "st" || spec.name == "mt") {
    const ProtocolResult res = spec.name == "st" ? RunProtocolSt(spec, rdir)
                                                 : RunProtocolMt(spec, rdir);
    std::printf("%-14s %-16s %14s %14s\n", "target", "method",
                "source ACER %", "target HTER %");
    for (const MethodTargetResult& row : res.rows) {
      std::printf("%-14s %-16s %14.2f %14.2f\n", row.target.c_str(),
                  row.method.c_str(), 100.0 * row.mean_source_acer,
                  100.0 * row.mean_target_hter);
    }
  } else if (spec.name == "ablation") {
    const std::vector<AblationRow> rows = RunAblation(spec, rdir);
    std::printf("%-16s %14s %14s\n", "method", "source ACER %",
                "target HTER %");
    for (const AblationRow& row : rows) {
      std::printf("%-16s %14.2f %14.2f\n", row.name.c_str(),
                  100.0 * row.mean_source_acer, 100.0 * row.mean_target_hter);
    }
  } else {
    throw std::invalid_argument("unknown protocol kind: " + spec.name);
  }
  std::printf("artifacts under %s\n", rdir.c_str());
  return 0;
}

int CmdPlot(const Config& c, const SharedOpts& o, uint64_t seed) {
  namespace fs = std::filesystem;
  const std::string run = c.GetString("plot.run", o.out);
  int made = 0;

  if (fs::exists(run + "/step_log.csv")) {
    RenderLossCurves(o.out + "/loss_curves.bmp",
                     LoadStepLog(run + "/step_log.csv"));
    std::printf("wrote loss_curves.bmp\n");
    ++made;
  }

  std::vector<std::string> score_files;
  if (fs::exists(run)) {
    for (const auto& e : fs::directory_iterator(run)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("scores_", 0) == 0 && name.size() > 4 &&
          name.substr(name.size() - 4) == ".csv") {
        score_files.push_back(e.path().string());
      }
    }
  }
  std::sort(score_files.begin(), score_files.end());
  if (!score_files.empty()) {
    std::vector<ScoreSet> sets;
    for (const std::string& f : score_files) sets.push_back(LoadScoreCsv(f));
    double tau = 0.5;
    if (fs::exists(run + "/report.json")) {
      const SeedReports agg = LoadReportJson(run + "/report.json");
      if (!agg.reports.empty()) tau = agg.reports.front().threshold;
    }
    RenderScoreHistograms(o.out + "/score_hist.bmp", sets, tau);
    std::printf("wrote score_hist.bmp (%zu score sets)\n", sets.size());
    ++made;
  }

  if (fs::exists(run + "/checkpoint/manifest.json")) {
    ModelBundle models = LoadBundle(run + "/checkpoint");
    const ProtocolSpec spec = ProtocolFromConfig(c);
    const DomainDataset src = BuildSourceDataset(spec);
    const size_t ti = TargetIndex(spec, c.GetString("target", ""));
    const DomainDataset tgt_full = BuildTargetDatasets(spec).at(ti);
    auto pair = MakeFewshotTarget(tgt_full, spec.fewshot_subjects,
                                  FewshotSeed(spec, seed, ti));
    const DomainDataset aux = BuildAuxDomain(src, pair.first, spec.stylizer,
                                             AuxPairSeed(seed, ti));
    Eigen::MatrixXd feats;
    std::vector<RowMeta> meta;
    auto add_rows = [&](const DomainDataset& ds, const std::string& split,
                        size_t cap) {
      std::vector<int> idx = ds.SplitOrAll(split);
      if (idx.size() > cap) idx.resize(cap);
      const Eigen::MatrixXd f = ForwardInChunks(&models.g, ds, idx);
      const Eigen::Index base = feats.rows();
      feats.conservativeResize(base + f.rows(),
                               feats.cols() ? feats.cols() : f.cols());
      feats.bottomRows(f.rows()) = f;
      for (int i : idx) {
        meta.push_back({ds.samples[i].domain, ds.samples[i].label});
      }
    };
    add_rows(src, "test", 120);
    add_rows(pair.second, "", 120);
    add_rows(aux, "", 120);
    RenderFeatureScatter(o.out + "/feature_scatter.bmp", feats, meta);
    std::printf("wrote feature_scatter.bmp (%zu rows)\n", meta.size());
    ++made;
  }

  if (made == 0) {
    throw std::runtime_error("nothing to plot under " + run +
                             " (no step_log.csv, scores_*.csv, or checkpoint)");
  }
  return 0;
}

int Dispatch(const std::string& cmd, const SharedOpts& o) {
  const Config c = MergedConfig(o, cmd);
  const uint64_t seed = c.GetUint64("run.seed", 1);
  if (cmd == "gen-data") return CmdGenData(c, o);
  if (cmd == "augment") return CmdAugment(c, o, seed);
  if (cmd == "pretrain") return CmdPretrain(c, o, seed);
  if (cmd == "train") return CmdTrain(c, o, seed, "sasa");
  if (cmd == "baseline") return CmdTrain(c, o, seed, "joint");
  if (cmd == "eval") return CmdEval(c, o, seed);
  if (cmd == "protocol") return CmdProtocol(c, o);
  if (cmd == "plot") return CmdPlot(c, o, seed);
  throw std::logic_error("unhandled command: " + cmd);
}

}  // namespace
}  // namespace fsde

int main(int argc, char** argv) {
  CLI::App app{"few-shot domain expansion workbench for presentation-attack "
               "detection on synthetic domains"};
  app.require_subcommand(1);

  fsde::SharedOpts opts;
  auto add_shared = [&](const std::string& name, const std::string& desc) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", opts.config_path,
                   "config file with key = value lines");
    sc->add_option("--seed", opts.seed, "run seed (overrides run.seed)");
    sc->add_option("--out", opts.out, "output directory (default: out)");
    sc->add_option("--set", opts.sets,
                   "config override key=value; repeatable");
    return sc;
  };

  add_shared("gen-data",
             "generate the source and target datasets and save them");
  add_shared("augment",
             "draw the few-shot set and build the stylized auxiliary domain "
             "(keys: target)");
  add_shared("pretrain", "train the source-only model used for warm starts");
  add_shared("train",
             "run one adaptation method end to end (keys: method, target, "
             "pretrain_dir)");
  add_shared("baseline",
             "run a baseline method end to end (keys: method, target, "
             "pretrain_dir)");
  add_shared("eval",
             "evaluate a saved model bundle at the source equal-error "
             "threshold (keys: checkpoint)");
  add_shared("protocol",
             "run the full benchmark given by protocol.kind (st, mt, or "
             "ablation)");
  add_shared("plot",
             "render loss curves, score histograms, and a feature scatter "
             "from a finished run (keys: plot.run, target)");

  CLI11_PARSE(app, argc, argv);

  const std::vector<CLI::App*> parsed = app.get_subcommands();
  CLI::App* sc = parsed.at(0);
  opts.seed_given = sc->count("--seed") > 0;
  try {
    return fsde::Dispatch(sc->get_name(), opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
