// core/include/fsde/trainer.hpp

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

#ifndef FSDE_TRAINER_HPP_
#define FSDE_TRAINER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "fsde/losses.hpp"
#include "fsde/nets.hpp"
#include "fsde/synthdata.hpp"

namespace fsde {

enum class SwitchPolicy { kFixedFraction, kDiscAccuracy };

// One engine covers every method: the baselines are this config with
// domains/terms switched off, so "joint = full method with zero weights and
// no aux slice" holds by construction.
struct TrainConfig {
  double lr = 1e-4;
  double weight_decay = 1e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int steps = 2000;
  BatchSizes batch;  // 64 / 4 / 8
  LossConfig loss;

  // method matrix
  bool use_target = true;  // include the few-shot slice (and its CE/pairs)
  bool use_aux = true;
  bool use_cont = true;
  bool use_adv = true;
  bool use_lfc = true;

  // adversarial schedule
  bool progressive = true;    // staged; false = both discriminators always on
  bool adv_live_only = true;  // spoof features carry no adversarial gradient
  bool keep_ta_in_cs = false;
  SwitchPolicy switch_policy = SwitchPolicy::kFixedFraction;
  double switch_fraction = 0.3;
  int acc_window = 50;           // accuracy policy: moving-average span
  double acc_threshold = 0.55;   // switch when window mean drops below
  double acc_fallback_fraction = 0.8;

  bool warm_start = true;  // start G (and H) from the pretrained source model
  uint64_t seed = 0;

  void Validate() const;  // throws on out-of-range values
};

struct TrainState {
  int step = 0;
  Stage stage = Stage::kTA;
  int64_t g_updates = 0;
  int64_t h_updates = 0;
  int64_t d_ta_updates = 0;  // stays 0 until target-vs-aux runs
  int64_t d_cs_updates = 0;  // stays 0 while stage is TA
};

// One line of the training log; accuracies are NaN when that discriminator
// did not run this step.
struct StepLogRow {
  int step = 0;
  std::string stage;  // "TA" or "CS" (non-progressive runs sit in CS)
  double l_cls = 0.0;
  double l_sem = 0.0;
  double l_sep = 0.0;
  double l_adv_ta = 0.0;
  double l_adv_cs = 0.0;
  double l_lfc = 0.0;
  double l_total = 0.0;
  double d_ta_acc = 0.0;
  double d_cs_acc = 0.0;
};

// CSV with the fixed column set
// step,stage,L_Cls,L_Sem,L_Sep,L_Adv_ta,L_Adv_cs,L_Lfc,L_total,D_ta_acc,D_cs_acc.
void SaveStepLog(const std::string& path, const std::vector<StepLogRow>& log);
std::vector<StepLogRow> LoadStepLog(const std::string& path);

// Stage-controller rules, exposed for direct testing. Fixed-fraction policy:
// TA while step < round(switch_fraction * steps). Accuracy policy: switch
// when the D_ta accuracy window (length acc_window) is full and its mean
// drops below acc_threshold, or at the fallback step, whichever first.
int FixedSwitchStep(const TrainConfig& cfg);
int AccuracyFallbackStep(const TrainConfig& cfg);
bool AccuracyWindowSaysSwitch(const std::deque<double>& window,
                              const TrainConfig& cfg);

// Adam with decoupled-from-nothing L2 weight decay folded into the gradient.
// Moments are kept per registered parameter, parallel to the ParamRef list.
class AdamOpt {
 public:
  AdamOpt() = default;
  AdamOpt(double lr, double beta1, double beta2, double eps,
          double weight_decay);
  void Attach(std::vector<ParamRef> params);  // allocates zero moments
  void Step();                                // consumes accumulated grads
  int64_t UpdateCount() const { return t_; }

  void Save(const std::string& dir, const std::string& prefix) const;
  void Load(const std::string& dir, const std::string& prefix);

 private:
  double lr_ = 1e-4, b1_ = 0.9, b2_ = 0.999, eps_ = 1e-8, wd_ = 0.0;
  int64_t t_ = 0;
  std::vector<ParamRef> params_;
  std::vector<Eigen::ArrayXd> m_, v_;
};

// Single-threaded deterministic training loop.  Each step draws its batch
// from a seed derived from (config seed, step), so a reloaded checkpoint
// continues bit-exactly without serializing any RNG stream.
//
// Per step: compose the class-balanced batch, one generator forward over
// all rows, per-term feature gradients (classifier CE, weighted contrastive
// pairs, teacher anchoring on source rows, reversed discriminator gradients
// on live rows), discriminator updates first, then one generator backward
// and the generator/classifier Adam steps.
class Trainer {
 public:
  Trainer(ModelBundle* models, const TeacherSnapshot* teacher,
          const DomainDataset* src, const DomainDataset* tgt,
          const DomainDataset* aux, const TrainConfig& cfg);

  StepLogRow StepOnce();
  void Run();  // until cfg.steps
  const TrainState& State() const { return state_; }
  const std::vector<StepLogRow>& Log() const { return log_; }
  const TrainConfig& Config() const { return cfg_; }

  // Full state: parameters, optimizer moments, stage-controller state.
  void SaveCheckpoint(const std::string& dir) const;
  void LoadCheckpoint(const std::string& dir);

  // Probes for the staging/live-only invariants: the adversarial feature
  // gradient added to the last step's generator gradient, with row tags.
  const Eigen::MatrixXd& LastAdvFeatureGrad() const { return last_adv_dfeat_; }
  const std::vector<RowMeta>& LastBatchMeta() const { return last_meta_; }

 private:
  Stage ControllerStage(int step);
  void UpdateDiscriminator(Network* disc, AdamOpt* adam,
                           const std::vector<int>& rows0,
                           const std::vector<int>& rows1,
                           const Eigen::MatrixXd& feats, double* loss,
                           double* acc, Eigen::MatrixXd* dfeats);
  void WarnOnce(int slot, const std::string& message);

  ModelBundle* models_;
  const TeacherSnapshot* teacher_;
  const DomainDataset *src_, *tgt_, *aux_;
  TrainConfig cfg_;
  BatchSizes sizes_;  // per-method effective slice sizes

  AdamOpt adam_g_, adam_h_, adam_dta_, adam_dcs_;
  TrainState state_;
  std::vector<StepLogRow> log_;

  Eigen::MatrixXd teacher_src_;  // teacher features by source sample index
  bool switched_ = false;
  std::deque<double> acc_window_;
  Eigen::MatrixXd last_adv_dfeat_;
  std::vector<RowMeta> last_meta_;
  bool warned_[3] = {false, false, false};
};

// Parameter-only checkpoint (architecture + step/stage + one binary file per
// parameter): enough to evaluate or warm-start.  Trainer checkpoints use the
// same manifest with optimizer state added, so LoadBundle reads both.
void SaveBundle(const std::string& dir, const ModelBundle& models, int step,
                const std::string& stage);
ModelBundle LoadBundle(const std::string& dir);

struct PretrainResult {
  ModelBundle models;
  TeacherSnapshot teacher;  // snapshot of the final generator
  std::vector<StepLogRow> log;
};

// Classification-only training on the source domain; the final generator
// becomes the frozen teacher.
PretrainResult PretrainSource(const DomainDataset& src, const ArchConfig& arch,
                              TrainConfig cfg);

}  // namespace fsde

#endif  // FSDE_TRAINER_HPP_
