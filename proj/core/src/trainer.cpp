// core/src/trainer.cpp

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

#include "fsde/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fsde/io.hpp"
#include "json.hpp"

namespace fsde {

using nlohmann::json;

namespace {

constexpr uint64_t kStepStream = 0x53544550u;  // per-step batch seeds

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

json ArchToJson(const ArchConfig& arch) {
  return json{{"kind", arch.kind},
              {"in_channels", arch.in_channels},
              {"image_size", arch.image_size},
              {"feature_dim", arch.feature_dim},
              {"disc_hidden", arch.disc_hidden},
              {"widths", arch.widths}};
}

ArchConfig ArchFromJson(const json& j) {
  ArchConfig arch;
  arch.kind = j.at("kind").get<std::string>();
  arch.in_channels = j.at("in_channels").get<int>();
  arch.image_size = j.at("image_size").get<int>();
  arch.feature_dim = j.at("feature_dim").get<int>();
  arch.disc_hidden = j.at("disc_hidden").get<int>();
  arch.widths = j.at("widths").get<std::vector<int>>();
  return arch;
}

void WriteNet(const std::string& dir, const std::string& prefix,
              const Network& net, json* entries) {
  *entries = json::array();
  for (const ParamRef& p : net.Params()) {
    WriteDoubleArray(dir + "/" + prefix + "." + p.name + ".bin", p.value,
                     p.size);
    entries->push_back({{"name", p.name}, {"size", p.size}});
  }
}

void ReadNet(const std::string& dir, const std::string& prefix,
             const json& entries, Network* net) {
  std::vector<ParamRef> params = net->Params();
  if (entries.size() != params.size()) {
    throw std::runtime_error("checkpoint '" + prefix + "' has " +
                             std::to_string(entries.size()) +
                             " parameters, network has " +
                             std::to_string(params.size()));
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const std::string name = entries[i].at("name").get<std::string>();
    const int64_t size = entries[i].at("size").get<int64_t>();
    if (name != params[i].name || size != params[i].size) {
      throw std::runtime_error("checkpoint parameter mismatch at '" + name +
                               "' (expected '" + params[i].name + "')");
    }
    std::vector<double> data =
        ReadDoubleArray(dir + "/" + prefix + "." + name + ".bin", size);
    std::copy(data.begin(), data.end(), params[i].value);
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw std::invalid_argument("lr must be positive");
  }
  if (weight_decay < 0.0) {
    throw std::invalid_argument("weight_decay must be nonnegative");
  }
  if (steps <= 0) throw std::invalid_argument("steps must be positive");
  if (!(switch_fraction > 0.0 && switch_fraction < 1.0)) {
    throw std::invalid_argument("switch_fraction must lie in (0, 1)");
  }
  if (acc_window <= 0) throw std::invalid_argument("acc_window must be positive");
  if (!(acc_fallback_fraction > 0.0 && acc_fallback_fraction <= 1.0)) {
    throw std::invalid_argument("acc_fallback_fraction must lie in (0, 1]");
  }
  if (batch.source <= 0) {
    throw std::invalid_argument("batch.source must be positive");
  }
  if (batch.target < 0 || batch.aux < 0) {
    throw std::invalid_argument("batch sizes must be nonnegative");
  }
  loss.Validate();
}

AdamOpt::AdamOpt(double lr, double beta1, double beta2, double eps,
                 double weight_decay)
    : lr_(lr), b1_(beta1), b2_(beta2), eps_(eps), wd_(weight_decay) {}

void AdamOpt::Attach(std::vector<ParamRef> params) {
  params_ = std::move(params);
  m_.clear();
  v_.clear();
  for (const ParamRef& p : params_) {
    if (p.grad == nullptr) {
      throw std::invalid_argument("optimizer needs mutable parameter '" +
                                  p.name + "'");
    }
    m_.push_back(Eigen::ArrayXd::Zero(p.size));
    v_.push_back(Eigen::ArrayXd::Zero(p.size));
  }
  t_ = 0;
}

void AdamOpt::Step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    Eigen::Map<Eigen::ArrayXd> p(params_[i].value, params_[i].size);
    Eigen::Map<const Eigen::ArrayXd> g(params_[i].grad, params_[i].size);
    const Eigen::ArrayXd geff = g + wd_ * p;  // L2 term folded into the grad
    m_[i] = b1_ * m_[i] + (1.0 - b1_) * geff;
    v_[i] = b2_ * v_[i] + (1.0 - b2_) * geff.square();
    p -= lr_ * (m_[i] / bc1) / ((v_[i] / bc2).sqrt() + eps_);
  }
}

void AdamOpt::Save(const std::string& dir, const std::string& prefix) const {
  json j;
  j["t"] = t_;
  WriteTextFile(dir + "/" + prefix + ".adam.json", j.dump() + "\n");
  for (size_t i = 0; i < params_.size(); ++i) {
    const std::string base = dir + "/" + prefix + "." + params_[i].name;
    WriteDoubleArray(base + ".m.bin", m_[i].data(), m_[i].size());
    WriteDoubleArray(base + ".v.bin", v_[i].data(), v_[i].size());
  }
}

void AdamOpt::Load(const std::string& dir, const std::string& prefix) {
  json j = json::parse(ReadTextFile(dir + "/" + prefix + ".adam.json"));
  t_ = j.at("t").get<int64_t>();
  for (size_t i = 0; i < params_.size(); ++i) {
    const std::string base = dir + "/" + prefix + "." + params_[i].name;
    std::vector<double> m = ReadDoubleArray(base + ".m.bin", params_[i].size);
    std::vector<double> v = ReadDoubleArray(base + ".v.bin", params_[i].size);
    m_[i] = Eigen::Map<Eigen::ArrayXd>(m.data(), params_[i].size);
    v_[i] = Eigen::Map<Eigen::ArrayXd>(v.data(), params_[i].size);
  }
}

Trainer::Trainer(ModelBundle* models, const TeacherSnapshot* teacher,
                 const DomainDataset* src, const DomainDataset* tgt,
                 const DomainDataset* aux, const TrainConfig& cfg)
    : models_(models), teacher_(teacher), src_(src), tgt_(tgt), aux_(aux),
      cfg_(cfg) {
  cfg_.Validate();
  if (models_ == nullptr) throw std::invalid_argument("models required");
  models_->arch.Validate();
  if (src_ == nullptr || src_->TrainPool().empty()) {
    throw std::invalid_argument("source train pool must be nonempty");
  }
  sizes_ = cfg_.batch;
  if (!cfg_.use_target) sizes_.target = 0;
  if (!cfg_.use_aux) sizes_.aux = 0;
  if (sizes_.target > 0 && tgt_ == nullptr) {
    throw std::invalid_argument("use_target set but no target dataset given");
  }
  if (sizes_.aux > 0 && aux_ == nullptr) {
    throw std::invalid_argument("use_aux set but no aux dataset given");
  }
  if (cfg_.use_lfc && (teacher_ == nullptr || teacher_->Empty())) {
    throw std::invalid_argument("use_lfc set but no teacher snapshot given");
  }
  const ImageBuf& ref = src_->samples[0].image;
  for (const DomainDataset* ds : {tgt_, aux_}) {
    if (ds == nullptr || ds->samples.empty()) continue;
    const ImageBuf& img = ds->samples[0].image;
    if (img.channels != ref.channels || img.height != ref.height ||
        img.width != ref.width) {
      throw std::invalid_argument("image shape of domain '" + ds->name +
                                  "' differs from the source");
    }
  }

  adam_g_ = AdamOpt(cfg_.lr, cfg_.beta1, cfg_.beta2, cfg_.adam_eps,
                    cfg_.weight_decay);
  adam_h_ = adam_g_;
  adam_dta_ = adam_g_;
  adam_dcs_ = adam_g_;
  adam_g_.Attach(models_->g.Params());
  adam_h_.Attach(models_->h.Params());
  adam_dta_.Attach(models_->d_ta.Params());
  adam_dcs_.Attach(models_->d_cs.Params());

  if (cfg_.use_lfc) {
    // Teacher features for every trainable source row, computed once; the
    // teacher is frozen so this cache is valid for the whole run.
    const int d = models_->arch.feature_dim;
    teacher_src_ = Eigen::MatrixXd::Zero(
        static_cast<Eigen::Index>(src_->samples.size()), d);
    const std::vector<int> pool = src_->TrainPool();
    const int chunk = 128;
    for (size_t lo = 0; lo < pool.size(); lo += chunk) {
      const size_t hi = std::min(pool.size(), lo + chunk);
      std::vector<int> part(pool.begin() + lo, pool.begin() + hi);
      Eigen::MatrixXd f = teacher_->Forward(DatasetBlob(*src_, part));
      for (size_t i = 0; i < part.size(); ++i) {
        teacher_src_.row(part[i]) = f.row(static_cast<Eigen::Index>(i));
      }
    }
  }
}

void Trainer::WarnOnce(int slot, const std::string& message) {
  if (warned_[slot]) return;
  warned_[slot] = true;
  std::cerr << "[warn] " << message << "\n";
}

int FixedSwitchStep(const TrainConfig& cfg) {
  return static_cast<int>(std::lround(cfg.switch_fraction * cfg.steps));
}

int AccuracyFallbackStep(const TrainConfig& cfg) {
  return static_cast<int>(std::lround(cfg.acc_fallback_fraction * cfg.steps));
}

bool AccuracyWindowSaysSwitch(const std::deque<double>& window,
                              const TrainConfig& cfg) {
  if (static_cast<int>(window.size()) < cfg.acc_window) return false;
  double sum = 0.0;
  for (double a : window) sum += a;
  return sum / static_cast<double>(window.size()) < cfg.acc_threshold;
}

Stage Trainer::ControllerStage(int step) {
  if (!cfg_.progressive) {
    switched_ = true;  // both discriminators run from step 0
    return Stage::kCS;
  }
  if (switched_) return Stage::kCS;
  if (cfg_.switch_policy == SwitchPolicy::kFixedFraction) {
    if (step >= FixedSwitchStep(cfg_)) {
      switched_ = true;
      return Stage::kCS;
    }
    return Stage::kTA;
  }
  if (step >= AccuracyFallbackStep(cfg_) ||
      AccuracyWindowSaysSwitch(acc_window_, cfg_)) {
    switched_ = true;
    return Stage::kCS;
  }
  return Stage::kTA;
}

void Trainer::UpdateDiscriminator(Network* disc, AdamOpt* adam,
                                  const std::vector<int>& rows0,
                                  const std::vector<int>& rows1,
                                  const Eigen::MatrixXd& feats, double* loss,
                                  double* acc, Eigen::MatrixXd* dfeats) {
  const int n0 = static_cast<int>(rows0.size());
  const int n1 = static_cast<int>(rows1.size());
  Eigen::MatrixXd stack(n0 + n1, feats.cols());
  std::vector<int> domain(n0 + n1);
  for (int i = 0; i < n0; ++i) {
    stack.row(i) = feats.row(rows0[i]);
    domain[i] = 0;
  }
  for (int i = 0; i < n1; ++i) {
    stack.row(n0 + i) = feats.row(rows1[i]);
    domain[n0 + i] = 1;
  }
  disc->ZeroGrad();
  Blob logits = disc->Forward(FeatureBlob(stack), true);
  Eigen::MatrixXd dlogits;
  *loss = DomainAdversarialLoss(logits.m, domain, &dlogits, acc);
  Blob dstack = disc->Backward(FeatureBlob(dlogits));
  adam->Step();
  // Gradient reversal: the generator descends the negated discriminator
  // gradient, scaled by the adversarial weight.
  const double w = -cfg_.loss.lambda2;
  for (int i = 0; i < n0 + n1; ++i) {
    const int r = i < n0 ? rows0[i] : rows1[i - n0];
    dfeats->row(r) += w * dstack.m.row(i);
    last_adv_dfeat_.row(r) += w * dstack.m.row(i);
  }
}

StepLogRow Trainer::StepOnce() {
  const int step = state_.step;
  const Stage stage = ControllerStage(step);
  state_.stage = stage;

  const uint64_t bseed =
      DeriveSeed(cfg_.seed, {kStepStream, static_cast<uint64_t>(step)});
  const Batch batch = ComposeBatch(src_, tgt_, aux_, sizes_, bseed);
  const int n = batch.TotalSize();
  const int d = models_->arch.feature_dim;

  const ImageBuf& ref = src_->samples[0].image;
  Blob images(n, ref.channels, ref.height, ref.width);
  std::vector<int> labels(n);
  std::vector<RowMeta> meta(n);
  int src_row0 = 0;
  const std::vector<int>* src_indices = nullptr;
  std::vector<int> rows_s, rows_t, rows_a;  // adversarial row pools
  int row = 0;
  for (const BatchSlice& slice : batch.slices) {
    Blob part = DatasetBlob(*slice.dataset, slice.indices);
    images.m.middleRows(row, part.n) = part.m;
    for (size_t i = 0; i < slice.indices.size(); ++i) {
      const Sample& s = slice.dataset->samples[slice.indices[i]];
      labels[row + static_cast<int>(i)] = s.label;
      meta[row + static_cast<int>(i)] = RowMeta{slice.kind, s.label};
      if (!cfg_.adv_live_only || s.label == kLive) {
        const int r = row + static_cast<int>(i);
        if (slice.kind == DomainKind::kSource) rows_s.push_back(r);
        if (slice.kind == DomainKind::kTarget) rows_t.push_back(r);
        if (slice.kind == DomainKind::kAux) rows_a.push_back(r);
      }
    }
    if (slice.kind == DomainKind::kSource) {
      src_row0 = row;
      src_indices = &slice.indices;
    }
    row += part.n;
  }

  Blob feats = models_->g.Forward(images, true);
  const Eigen::MatrixXd& F = feats.m;
  Eigen::MatrixXd dF = Eigen::MatrixXd::Zero(n, d);

  // classification on every labeled row
  models_->h.ZeroGrad();
  Blob logits = models_->h.Forward(feats, true);
  Eigen::MatrixXd dlogits;
  const double l_cls = ClassificationLoss(logits.m, labels, &dlogits);
  dF += models_->h.Backward(FeatureBlob(dlogits)).m;

  // contrastive alignment over exhaustive cross-domain pairs
  double l_sem = 0.0, l_sep = 0.0;
  if (cfg_.use_cont) {
    std::vector<FeaturePair> positive, negative;
    BuildBatchPairs(meta, &positive, &negative);
    if (positive.empty() && negative.empty()) {
      WarnOnce(0, "no cross-domain pairs in batch; contrastive term is 0");
    } else {
      Eigen::MatrixXd dcont = Eigen::MatrixXd::Zero(n, d);
      l_sem = SemanticAlignmentLoss(F, meta, positive, &dcont);
      l_sep = SeparationLoss(F, meta, negative, cfg_.loss.margin, &dcont);
      dF += cfg_.loss.lambda1 * dcont;
    }
  }

  // feature anchoring against the frozen teacher, source rows only
  double l_lfc = 0.0;
  if (cfg_.use_lfc) {
    const int ns = static_cast<int>(src_indices->size());
    Eigen::MatrixXd fs = F.middleRows(src_row0, ns);
    Eigen::MatrixXd ft(ns, d);
    for (int i = 0; i < ns; ++i) ft.row(i) = teacher_src_.row((*src_indices)[i]);
    Eigen::MatrixXd dlfc = Eigen::MatrixXd::Zero(ns, d);
    l_lfc = LessForgettingLoss(fs, ft, &dlfc);
    dF.middleRows(src_row0, ns) += cfg_.loss.lambda3 * dlfc;
  }

  // staged adversarial updates, discriminators first
  double l_ta = 0.0, l_cs = 0.0;
  double acc_ta = kNan, acc_cs = kNan;
  last_adv_dfeat_ = Eigen::MatrixXd::Zero(n, d);
  if (cfg_.use_adv) {
    const bool ta_active = !cfg_.progressive || stage == Stage::kTA ||
                           cfg_.keep_ta_in_cs;
    const bool cs_active = !cfg_.progressive || stage == Stage::kCS;
    if (ta_active) {
      if (!rows_t.empty() && !rows_a.empty()) {
        UpdateDiscriminator(&models_->d_ta, &adam_dta_, rows_t, rows_a, F,
                            &l_ta, &acc_ta, &dF);
        ++state_.d_ta_updates;
        if (cfg_.progressive && !switched_) {
          acc_window_.push_back(acc_ta);
          while (static_cast<int>(acc_window_.size()) > cfg_.acc_window) {
            acc_window_.pop_front();
          }
        }
      } else {
        WarnOnce(1, "target-vs-aux discriminator skipped: a side is empty");
      }
    }
    if (cs_active) {
      if ((!rows_t.empty() || !rows_a.empty()) && !rows_s.empty()) {
        std::vector<int> rows_c = rows_t;
        rows_c.insert(rows_c.end(), rows_a.begin(), rows_a.end());
        UpdateDiscriminator(&models_->d_cs, &adam_dcs_, rows_c, rows_s, F,
                            &l_cs, &acc_cs, &dF);
        ++state_.d_cs_updates;
      } else {
        WarnOnce(2, "combined-vs-source discriminator skipped: a side is empty");
      }
    }
  }

  models_->g.ZeroGrad();
  models_->g.Backward(FeatureBlob(dF));
  adam_g_.Step();
  adam_h_.Step();
  ++state_.g_updates;
  ++state_.h_updates;

  LossParts parts;
  parts.cls = l_cls;
  parts.cont = l_sem + l_sep;
  parts.adv = l_ta + l_cs;
  parts.lfc = l_lfc;
  const double l_total = TotalLoss(parts, cfg_.loss);
  if (!std::isfinite(l_total)) {
    std::ostringstream msg;
    msg << "non-finite loss at step " << step << " (cls=" << l_cls
        << " sem=" << l_sem << " sep=" << l_sep << " adv_ta=" << l_ta
        << " adv_cs=" << l_cs << " lfc=" << l_lfc << ")";
    throw std::runtime_error(msg.str());
  }

  StepLogRow out;
  out.step = step;
  out.stage = StageName(stage);
  out.l_cls = l_cls;
  out.l_sem = l_sem;
  out.l_sep = l_sep;
  out.l_adv_ta = l_ta;
  out.l_adv_cs = l_cs;
  out.l_lfc = l_lfc;
  out.l_total = l_total;
  out.d_ta_acc = acc_ta;
  out.d_cs_acc = acc_cs;
  log_.push_back(out);
  last_meta_ = meta;
  ++state_.step;
  return out;
}

void Trainer::Run() {
  while (state_.step < cfg_.steps) StepOnce();
}

void Trainer::SaveCheckpoint(const std::string& dir) const {
  EnsureDir(dir);
  json manifest;
  manifest["format"] = "fsde-checkpoint";
  manifest["arch"] = ArchToJson(models_->arch);
  manifest["step"] = state_.step;
  manifest["stage"] = StageName(state_.stage);
  manifest["switched"] = switched_;
  manifest["acc_window"] =
      std::vector<double>(acc_window_.begin(), acc_window_.end());
  manifest["updates"] = {{"g", state_.g_updates},
                         {"h", state_.h_updates},
                         {"d_ta", state_.d_ta_updates},
                         {"d_cs", state_.d_cs_updates}};
  manifest["has_optimizer"] = true;
  json nets = json::object();
  json entries;
  WriteNet(dir, "g", models_->g, &entries);
  nets["g"] = entries;
  WriteNet(dir, "h", models_->h, &entries);
  nets["h"] = entries;
  WriteNet(dir, "d_ta", models_->d_ta, &entries);
  nets["d_ta"] = entries;
  WriteNet(dir, "d_cs", models_->d_cs, &entries);
  nets["d_cs"] = entries;
  manifest["nets"] = nets;
  adam_g_.Save(dir, "g");
  adam_h_.Save(dir, "h");
  adam_dta_.Save(dir, "d_ta");
  adam_dcs_.Save(dir, "d_cs");
  WriteTextFile(dir + "/manifest.json", manifest.dump(2) + "\n");
}

void Trainer::LoadCheckpoint(const std::string& dir) {
  json manifest = json::parse(ReadTextFile(dir + "/manifest.json"));
  if (ArchToJson(models_->arch) != manifest.at("arch")) {
    throw std::runtime_error("checkpoint architecture differs from the models");
  }
  if (!manifest.value("has_optimizer", false)) {
    throw std::runtime_error("checkpoint lacks optimizer state; cannot resume");
  }
  const json& nets = manifest.at("nets");
  ReadNet(dir, "g", nets.at("g"), &models_->g);
  ReadNet(dir, "h", nets.at("h"), &models_->h);
  ReadNet(dir, "d_ta", nets.at("d_ta"), &models_->d_ta);
  ReadNet(dir, "d_cs", nets.at("d_cs"), &models_->d_cs);
  adam_g_.Load(dir, "g");
  adam_h_.Load(dir, "h");
  adam_dta_.Load(dir, "d_ta");
  adam_dcs_.Load(dir, "d_cs");
  state_.step = manifest.at("step").get<int>();
  state_.stage = StageFromName(manifest.at("stage").get<std::string>());
  state_.g_updates = manifest.at("updates").at("g").get<int64_t>();
  state_.h_updates = manifest.at("updates").at("h").get<int64_t>();
  state_.d_ta_updates = manifest.at("updates").at("d_ta").get<int64_t>();
  state_.d_cs_updates = manifest.at("updates").at("d_cs").get<int64_t>();
  switched_ = manifest.at("switched").get<bool>();
  acc_window_.clear();
  for (double a : manifest.at("acc_window").get<std::vector<double>>()) {
    acc_window_.push_back(a);
  }
}

void SaveBundle(const std::string& dir, const ModelBundle& models, int step,
                const std::string& stage) {
  EnsureDir(dir);
  json manifest;
  manifest["format"] = "fsde-checkpoint";
  manifest["arch"] = ArchToJson(models.arch);
  manifest["step"] = step;
  manifest["stage"] = stage;
  manifest["has_optimizer"] = false;
  json nets = json::object();
  json entries;
  WriteNet(dir, "g", models.g, &entries);
  nets["g"] = entries;
  WriteNet(dir, "h", models.h, &entries);
  nets["h"] = entries;
  WriteNet(dir, "d_ta", models.d_ta, &entries);
  nets["d_ta"] = entries;
  WriteNet(dir, "d_cs", models.d_cs, &entries);
  nets["d_cs"] = entries;
  manifest["nets"] = nets;
  WriteTextFile(dir + "/manifest.json", manifest.dump(2) + "\n");
}

ModelBundle LoadBundle(const std::string& dir) {
  json manifest = json::parse(ReadTextFile(dir + "/manifest.json"));
  ModelBundle models = BuildModels(ArchFromJson(manifest.at("arch")), 0);
  const json& nets = manifest.at("nets");
  ReadNet(dir, "g", nets.at("g"), &models.g);
  ReadNet(dir, "h", nets.at("h"), &models.h);
  ReadNet(dir, "d_ta", nets.at("d_ta"), &models.d_ta);
  ReadNet(dir, "d_cs", nets.at("d_cs"), &models.d_cs);
  return models;
}

void SaveStepLog(const std::string& path, const std::vector<StepLogRow>& log) {
  std::ostringstream csv;
  csv << "step,stage,L_Cls,L_Sem,L_Sep,L_Adv_ta,L_Adv_cs,L_Lfc,L_total,"
         "D_ta_acc,D_cs_acc\n";
  for (const StepLogRow& r : log) {
    csv << r.step << "," << r.stage << "," << FormatDouble(r.l_cls) << ","
        << FormatDouble(r.l_sem) << "," << FormatDouble(r.l_sep) << ","
        << FormatDouble(r.l_adv_ta) << "," << FormatDouble(r.l_adv_cs) << ","
        << FormatDouble(r.l_lfc) << "," << FormatDouble(r.l_total) << ","
        << FormatDouble(r.d_ta_acc) << "," << FormatDouble(r.d_cs_acc) << "\n";
  }
  WriteTextFile(path, csv.str());
}

std::vector<StepLogRow> LoadStepLog(const std::string& path) {
  std::istringstream csv(ReadTextFile(path));
  std::string line;
  std::getline(csv, line);  // header
  std::vector<StepLogRow> log;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 11) {
      throw std::runtime_error("step-log row malformed: " + line);
    }
    StepLogRow r;
    r.step = std::stoi(fields[0]);
    r.stage = fields[1];
    r.l_cls = std::stod(fields[2]);
    r.l_sem = std::stod(fields[3]);
    r.l_sep = std::stod(fields[4]);
    r.l_adv_ta = std::stod(fields[5]);
    r.l_adv_cs = std::stod(fields[6]);
    r.l_lfc = std::stod(fields[7]);
    r.l_total = std::stod(fields[8]);
    r.d_ta_acc = std::stod(fields[9]);
    r.d_cs_acc = std::stod(fields[10]);
    log.push_back(r);
  }
  return log;
}

PretrainResult PretrainSource(const DomainDataset& src, const ArchConfig& arch,
                              TrainConfig cfg) {
  cfg.use_target = false;
  cfg.use_aux = false;
  cfg.use_cont = false;
  cfg.use_adv = false;
  cfg.use_lfc = false;
  PretrainResult out;
  out.models = BuildModels(arch, cfg.seed);
  {
    Trainer trainer(&out.models, nullptr, &src, nullptr, nullptr, cfg);
    trainer.Run();
    out.log = trainer.Log();
  }
  out.teacher = TeacherSnapshot(out.models.g, arch);
  return out;
}

}  // namespace fsde
