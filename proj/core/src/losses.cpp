// core/src/losses.cpp

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

#include "fsde/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace fsde {

void LossConfig::Validate() const {
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0) {
    throw std::invalid_argument("loss weights must be >= 0");
  }
  if (!(margin > 0.0)) throw std::invalid_argument("margin must be > 0");
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2) ||
      !std::isfinite(lambda3) || !std::isfinite(margin)) {
    throw std::invalid_argument("loss config must be finite");
  }
}

void ValidatePairs(const std::vector<FeaturePair>& pairs,
                   const std::vector<RowMeta>& meta, bool require_positive,
                   bool require_negative) {
  for (const FeaturePair& p : pairs) {
    if (p.a < 0 || p.b < 0 || p.a >= static_cast<int>(meta.size()) ||
        p.b >= static_cast<int>(meta.size())) {
      throw std::invalid_argument("pair index out of range");
    }
    const RowMeta& ma = meta[p.a];
    const RowMeta& mb = meta[p.b];
    const bool src_tgt =
        ma.domain == DomainKind::kSource && mb.domain == DomainKind::kTarget;
    const bool tgt_aux =
        ma.domain == DomainKind::kTarget && mb.domain == DomainKind::kAux;
    if (!src_tgt && !tgt_aux) {
      throw std::invalid_argument("illegal pair domains (" +
                                  DomainKindName(ma.domain) + ", " +
                                  DomainKindName(mb.domain) + ")");
    }
    if (require_positive && ma.label != mb.label) {
      throw std::invalid_argument("negative pair in a positive-only set");
    }
    if (require_negative && ma.label == mb.label) {
      throw std::invalid_argument("positive pair in a negative-only set");
    }
  }
}

void BuildBatchPairs(const std::vector<RowMeta>& meta,
                     std::vector<FeaturePair>* positive,
                     std::vector<FeaturePair>* negative) {
  const int n = static_cast<int>(meta.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool src_tgt = meta[i].domain == DomainKind::kSource &&
                           meta[j].domain == DomainKind::kTarget;
      const bool tgt_aux = meta[i].domain == DomainKind::kTarget &&
                           meta[j].domain == DomainKind::kAux;
      if (!src_tgt && !tgt_aux) continue;
      if (meta[i].label == meta[j].label) {
        positive->push_back({i, j});
      } else {
        negative->push_back({i, j});
      }
    }
  }
}

double SemanticAlignmentLoss(const Eigen::MatrixXd& feats,
                             const std::vector<RowMeta>& meta,
                             const std::vector<FeaturePair>& positive,
                             Eigen::MatrixXd* dfeat) {
  ValidatePairs(positive, meta, /*require_positive=*/true,
                /*require_negative=*/false);
  double loss = 0.0;
  for (const FeaturePair& p : positive) {
    Eigen::RowVectorXd diff = feats.row(p.a) - feats.row(p.b);
    loss += 0.5 * diff.squaredNorm();
    if (dfeat != nullptr) {
      dfeat->row(p.a) += diff;
      dfeat->row(p.b) -= diff;
    }
  }
  return loss;
}

double SeparationLoss(const Eigen::MatrixXd& feats,
                      const std::vector<RowMeta>& meta,
                      const std::vector<FeaturePair>& negative, double margin,
                      Eigen::MatrixXd* dfeat) {
  if (!(margin > 0.0)) throw std::invalid_argument("margin must be > 0");
  ValidatePairs(negative, meta, /*require_positive=*/false,
                /*require_negative=*/true);
  double loss = 0.0;
  for (const FeaturePair& p : negative) {
    Eigen::RowVectorXd diff = feats.row(p.a) - feats.row(p.b);
    const double gap = margin - diff.squaredNorm();
    if (gap > 0.0) {
      loss += 0.5 * gap;
      if (dfeat != nullptr) {
        dfeat->row(p.a) -= diff;
        dfeat->row(p.b) += diff;
      }
    }
  }
  return loss;
}

double ContrastiveLoss(const Eigen::MatrixXd& feats,
                       const std::vector<RowMeta>& meta,
                       const std::vector<FeaturePair>& positive,
                       const std::vector<FeaturePair>& negative, double margin,
                       Eigen::MatrixXd* dfeat) {
  return SemanticAlignmentLoss(feats, meta, positive, dfeat) +
         SeparationLoss(feats, meta, negative, margin, dfeat);
}

double MeanCrossEntropy(const Eigen::MatrixXd& logits,
                        const std::vector<int>& labels,
                        Eigen::MatrixXd* dlogits, double* accuracy) {
  const Eigen::Index n = logits.rows();
  if (n == 0 || logits.cols() != 2 ||
      labels.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("cross-entropy shape mismatch");
  }
  if (dlogits != nullptr) dlogits->setZero(n, 2);
  double loss = 0.0;
  int hits = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = labels[i];
    if (y != 0 && y != 1) throw std::invalid_argument("labels must be 0 or 1");
    const double z0 = logits(i, 0), z1 = logits(i, 1);
    const double zmax = std::max(z0, z1);
    const double lse = zmax + std::log(std::exp(z0 - zmax) + std::exp(z1 - zmax));
    loss += lse - logits(i, y);
    const int pred = z1 > z0 ? 1 : 0;
    hits += pred == y ? 1 : 0;
    if (dlogits != nullptr) {
      const double p0 = std::exp(z0 - lse);
      const double p1 = std::exp(z1 - lse);
      (*dlogits)(i, 0) = (p0 - (y == 0 ? 1.0 : 0.0)) / static_cast<double>(n);
      (*dlogits)(i, 1) = (p1 - (y == 1 ? 1.0 : 0.0)) / static_cast<double>(n);
    }
  }
  if (accuracy != nullptr) *accuracy = static_cast<double>(hits) / static_cast<double>(n);
  return loss / static_cast<double>(n);
}

double DomainAdversarialLoss(const Eigen::MatrixXd& logits,
                             const std::vector<int>& domain_labels,
                             Eigen::MatrixXd* dlogits, double* accuracy) {
  bool has0 = false, has1 = false;
  for (int d : domain_labels) {
    has0 = has0 || d == 0;
    has1 = has1 || d == 1;
  }
  if (!has0 || !has1) {
    throw std::invalid_argument(
        "domain-adversarial loss needs both domains in the batch");
  }
  return MeanCrossEntropy(logits, domain_labels, dlogits, accuracy);
}

double ClassificationLoss(const Eigen::MatrixXd& logits,
                          const std::vector<int>& labels,
                          Eigen::MatrixXd* dlogits) {
  return MeanCrossEntropy(logits, labels, dlogits, nullptr);
}

double LessForgettingLoss(const Eigen::MatrixXd& g_feats,
                          const Eigen::MatrixXd& teacher_feats,
                          Eigen::MatrixXd* dfeat) {
  if (g_feats.rows() != teacher_feats.rows() ||
      g_feats.cols() != teacher_feats.cols()) {
    throw std::invalid_argument("feature-anchoring loss shape mismatch");
  }
  Eigen::MatrixXd diff = g_feats - teacher_feats;
  if (dfeat != nullptr) *dfeat += 2.0 * diff;
  return diff.squaredNorm();
}

std::string StageName(Stage stage) {
  return stage == Stage::kTA ? "TA" : "CS";
}

Stage StageFromName(const std::string& name) {
  if (name == "TA") return Stage::kTA;
  if (name == "CS") return Stage::kCS;
  throw std::invalid_argument("unknown stage '" + name + "' (want TA or CS)");
}

namespace {

double DomainLossOn(Network* d, const Eigen::MatrixXd& f0,
                    const Eigen::MatrixXd& f1) {
  Eigen::MatrixXd stacked(f0.rows() + f1.rows(), f0.cols());
  stacked << f0, f1;
  std::vector<int> domains(stacked.rows(), 0);
  for (Eigen::Index i = f0.rows(); i < stacked.rows(); ++i) domains[i] = 1;
  Eigen::MatrixXd logits = d->Forward(FeatureBlob(stacked), /*train=*/false).m;
  return DomainAdversarialLoss(logits, domains, nullptr, nullptr);
}

}  // namespace

AdvLossValues ProgressiveAdvLoss(Stage stage, const Eigen::MatrixXd& feats_t,
                                 const Eigen::MatrixXd& feats_a,
                                 const Eigen::MatrixXd& feats_s, Network* d_ta,
                                 Network* d_cs, bool keep_ta_in_cs) {
  AdvLossValues values;
  if (stage == Stage::kTA || keep_ta_in_cs) {
    values.ta = DomainLossOn(d_ta, feats_t, feats_a);
  }
  if (stage == Stage::kCS) {
    Eigen::MatrixXd combined(feats_t.rows() + feats_a.rows(), feats_t.cols());
    combined << feats_t, feats_a;
    values.cs = DomainLossOn(d_cs, combined, feats_s);
  }
  return values;
}

double TotalLoss(const LossParts& parts, const LossConfig& cfg) {
  cfg.Validate();
  return parts.cls + cfg.lambda1 * parts.cont + cfg.lambda2 * parts.adv +
         cfg.lambda3 * parts.lfc;
}

}  // namespace fsde
