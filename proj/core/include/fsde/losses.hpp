// core/include/fsde/losses.hpp

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

#ifndef FSDE_LOSSES_HPP_
#define FSDE_LOSSES_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fsde/nets.hpp"
#include "fsde/synthdata.hpp"

namespace fsde {

struct LossConfig {
  double lambda1 = 1e-3;  // contrastive weight
  double lambda2 = 1.0;   // adversarial weight
  double lambda3 = 10.0;  // feature-anchoring (less-forgetting) weight
  double margin = 1.0;    // separation margin on squared distance

  void Validate() const;  // throws on negative weights or margin <= 0
};

// Domain/label tag of one row of a shared feature matrix.
struct RowMeta {
  DomainKind domain = DomainKind::kSource;
  int label = 0;
};

// One cross-domain pair: rows a and b of the feature matrix.
struct FeaturePair {
  int a = 0;
  int b = 0;
};

// Legal pair kinds are (source, target) and (target, aux), in that row
// order.  Throws when a pair violates the domain rule, or when
// require_positive/require_negative is set and the labels disagree with it.
void ValidatePairs(const std::vector<FeaturePair>& pairs,
                   const std::vector<RowMeta>& meta, bool require_positive,
                   bool require_negative);

// Exhaustively enumerates every legal cross-domain pair within the batch,
// split by label agreement.
void BuildBatchPairs(const std::vector<RowMeta>& meta,
                     std::vector<FeaturePair>* positive,
                     std::vector<FeaturePair>* negative);

// Sum over positive pairs of 0.5*||f_a - f_b||^2.  If dfeat is non-null the
// feature gradient is accumulated into it.
double SemanticAlignmentLoss(const Eigen::MatrixXd& feats,
                             const std::vector<RowMeta>& meta,
                             const std::vector<FeaturePair>& positive,
                             Eigen::MatrixXd* dfeat);

// Sum over negative pairs of 0.5*max(0, margin - ||f_a - f_b||^2).
double SeparationLoss(const Eigen::MatrixXd& feats,
                      const std::vector<RowMeta>& meta,
                      const std::vector<FeaturePair>& negative, double margin,
                      Eigen::MatrixXd* dfeat);

// SemanticAlignmentLoss + SeparationLoss.
double ContrastiveLoss(const Eigen::MatrixXd& feats,
                       const std::vector<RowMeta>& meta,
                       const std::vector<FeaturePair>& positive,
                       const std::vector<FeaturePair>& negative, double margin,
                       Eigen::MatrixXd* dfeat);

// Mean softmax cross-entropy over rows; labels in {0,1}.  dlogits gets the
// mean-reduced gradient; accuracy (if non-null) the argmax hit rate.
double MeanCrossEntropy(const Eigen::MatrixXd& logits,
                        const std::vector<int>& labels,
                        Eigen::MatrixXd* dlogits, double* accuracy);

// Discriminator objective: mean CE of domain classification.  Requires both
// domain labels present (throws on a single-domain batch).  The generator's
// loss is realized through gradient reversal: its feature gradient is the
// negation of the discriminator-loss feature gradient.
double DomainAdversarialLoss(const Eigen::MatrixXd& logits,
                             const std::vector<int>& domain_labels,
                             Eigen::MatrixXd* dlogits, double* accuracy);

// Mean CE of live/spoof classification over the pooled batch.
double ClassificationLoss(const Eigen::MatrixXd& logits,
                          const std::vector<int>& labels,
                          Eigen::MatrixXd* dlogits);

// Sum over samples of ||g_row - teacher_row||^2 (no 1/2 factor); gradient
// 2*(g - teacher) accumulated into dfeat if non-null.
double LessForgettingLoss(const Eigen::MatrixXd& g_feats,
                          const Eigen::MatrixXd& teacher_feats,
                          Eigen::MatrixXd* dfeat);

// Progressive adversarial schedule stages: target-vs-aux first, then
// (target+aux combined)-vs-source.
enum class Stage { kTA, kCS };
std::string StageName(Stage stage);
Stage StageFromName(const std::string& name);

struct AdvLossValues {
  double ta = 0.0;
  double cs = 0.0;
  double Total() const { return ta + cs; }
};

// Forward-only evaluation of the stage-gated adversarial objective.  In TA
// only the target-vs-aux discriminator is consulted; in CS only the
// combined-vs-source one, unless keep_ta_in_cs keeps both active.
AdvLossValues ProgressiveAdvLoss(Stage stage, const Eigen::MatrixXd& feats_t,
                                 const Eigen::MatrixXd& feats_a,
                                 const Eigen::MatrixXd& feats_s, Network* d_ta,
                                 Network* d_cs, bool keep_ta_in_cs);

struct LossParts {
  double cls = 0.0;
  double cont = 0.0;
  double adv = 0.0;
  double lfc = 0.0;
};

// cls + lambda1*cont + lambda2*adv + lambda3*lfc
double TotalLoss(const LossParts& parts, const LossConfig& cfg);

}  // namespace fsde

#endif  // FSDE_LOSSES_HPP_
