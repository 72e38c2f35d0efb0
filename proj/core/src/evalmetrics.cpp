// core/src/evalmetrics.cpp

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

#include "fsde/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsde {

std::vector<int> Classify(const std::vector<double>& scores, double tau) {
  std::vector<int> pred(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    pred[i] = scores[i] >= tau ? kLive : kSpoof;
  }
  return pred;
}

namespace {

void CheckBothClasses(const ScoreSet& set) {
  if (set.scores.size() != set.labels.size()) {
    throw std::invalid_argument("score/label length mismatch");
  }
  bool has_live = false, has_spoof = false;
  for (int y : set.labels) {
    has_live = has_live || y == kLive;
    has_spoof = has_spoof || y == kSpoof;
  }
  if (!has_live || !has_spoof) {
    throw std::invalid_argument("score set needs both classes, domain '" +
                                set.domain + "'");
  }
}

// FAR = spoof accepted, FRR = live rejected, under live iff score >= tau.
void FarFrr(const ScoreSet& set, double tau, double* far, double* frr) {
  int n_live = 0, n_spoof = 0, spoof_accepted = 0, live_rejected = 0;
  for (size_t i = 0; i < set.scores.size(); ++i) {
    const bool live_call = set.scores[i] >= tau;
    if (set.labels[i] == kLive) {
      ++n_live;
      if (!live_call) ++live_rejected;
    } else {
      ++n_spoof;
      if (live_call) ++spoof_accepted;
    }
  }
  *far = static_cast<double>(spoof_accepted) / static_cast<double>(n_spoof);
  *frr = static_cast<double>(live_rejected) / static_cast<double>(n_live);
}

}  // namespace

ErrorRates ComputeErrorRates(const ScoreSet& set, double tau) {
  CheckBothClasses(set);
  ErrorRates rates;
  double far = 0.0, frr = 0.0;
  FarFrr(set, tau, &far, &frr);
  rates.apcer = far;
  rates.bpcer = frr;
  rates.acer = (rates.apcer + rates.bpcer) / 2.0;
  return rates;
}

double Hter(const ScoreSet& set, double tau) {
  CheckBothClasses(set);
  double far = 0.0, frr = 0.0;
  FarFrr(set, tau, &far, &frr);
  return (far + frr) / 2.0;
}

double SelectThreshold(const ScoreSet& source_val) {
  CheckBothClasses(source_val);
  std::vector<double> uniq = source_val.scores;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  const size_t m = uniq.size();

  // Interval k in [0, m]: tau in (uniq[k-1], uniq[k]] (open below for k=0,
  // open above for k=m).  FAR-FRR is constant on each interval and monotone
  // non-increasing across them, so the |FAR-FRR|-minimizing intervals form
  // one contiguous run.
  std::vector<double> diffs(m + 1, 0.0);
  double best = 2.0;
  for (size_t k = 0; k <= m; ++k) {
    const double tau = k < m ? uniq[k] : uniq[m - 1] + 1.0;
    double far = 0.0, frr = 0.0;
    FarFrr(source_val, tau, &far, &frr);
    diffs[k] = std::abs(far - frr);
    best = std::min(best, diffs[k]);
  }
  size_t run_first = 0;
  while (diffs[run_first] > best + 1e-15) ++run_first;
  size_t run_last = m;
  while (diffs[run_last] > best + 1e-15) --run_last;

  const double lo = run_first == 0 ? uniq[0] : uniq[run_first - 1];
  const double hi = run_last == m ? uniq[m - 1] + 1.0 : uniq[run_last];
  return 0.5 * (lo + hi);
}

std::vector<double> LivenessScores(const Eigen::MatrixXd& logits) {
  if (logits.cols() != 2) {
    throw std::invalid_argument("liveness scores need (n, 2) logits");
  }
  std::vector<double> scores(logits.rows());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double z_spoof = logits(i, kSpoof), z_live = logits(i, kLive);
    const double zmax = std::max(z_spoof, z_live);
    const double e_live = std::exp(z_live - zmax);
    scores[i] = e_live / (e_live + std::exp(z_spoof - zmax));
  }
  return scores;
}

ScoreSet ScoreDataset(Network* g, Network* h, const DomainDataset& ds,
                      const std::string& split) {
  const std::vector<int> idx = ds.SplitOrAll(split);
  if (idx.empty()) {
    throw std::invalid_argument("dataset '" + ds.name + "' split '" + split +
                                "' is empty");
  }
  Eigen::MatrixXd feats = ForwardInChunks(g, ds, idx);
  Eigen::MatrixXd logits = h->Forward(FeatureBlob(feats), false).m;
  ScoreSet set;
  set.domain = ds.name;
  set.scores = LivenessScores(logits);
  set.labels.reserve(idx.size());
  for (int i : idx) set.labels.push_back(ds.samples[i].label);
  set.sample_index = idx;
  return set;
}

MetricsReport Evaluate(Network* g, Network* h, double tau,
                       const DomainDataset& source,
                       const std::string& source_split,
                       const std::vector<const DomainDataset*>& targets,
                       const std::string& target_split) {
  MetricsReport report;
  report.threshold = tau;

  ScoreSet src_scores = ScoreDataset(g, h, source, source_split);
  ErrorRates src_rates = ComputeErrorRates(src_scores, tau);
  DomainMetrics src_metrics;
  src_metrics.apcer = src_rates.apcer;
  src_metrics.bpcer = src_rates.bpcer;
  src_metrics.acer = src_rates.acer;
  src_metrics.hter = Hter(src_scores, tau);
  report.per_domain[source.name] = src_metrics;

  for (const DomainDataset* tgt : targets) {
    ScoreSet tgt_scores = ScoreDataset(g, h, *tgt, target_split);
    ErrorRates rates = ComputeErrorRates(tgt_scores, tau);
    DomainMetrics metrics;
    metrics.apcer = rates.apcer;
    metrics.bpcer = rates.bpcer;
    metrics.acer = rates.acer;
    metrics.hter = Hter(tgt_scores, tau);
    report.per_domain[tgt->name] = metrics;
  }
  return report;
}

Aggregate AggregateValues(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate of empty list");
  Aggregate agg;
  for (double v : values) agg.mean += v;
  agg.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return agg;
}

}  // namespace fsde
