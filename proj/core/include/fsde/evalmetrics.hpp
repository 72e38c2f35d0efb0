// core/include/fsde/evalmetrics.hpp

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

#ifndef FSDE_EVALMETRICS_HPP_
#define FSDE_EVALMETRICS_HPP_

#include <map>
#include <string>
#include <vector>

#include "fsde/nets.hpp"
#include "fsde/synthdata.hpp"

namespace fsde {

// Liveness scores (posterior of the live class) with ground-truth labels.
struct ScoreSet {
  std::vector<double> scores;      // each in [0, 1]
  std::vector<int> labels;         // kLive / kSpoof
  std::vector<int> sample_index;   // dataset row of each score
  std::string domain;
};

struct ErrorRates {
  double apcer = 0.0;  // spoof classified live
  double bpcer = 0.0;  // live classified spoof
  double acer = 0.0;   // (apcer + bpcer) / 2, exact
};

// Decision rule: live iff score >= tau.
std::vector<int> Classify(const std::vector<double>& scores, double tau);

// Requires both classes present; throws otherwise.
ErrorRates ComputeErrorRates(const ScoreSet& set, double tau);

// (FAR + FRR)/2 at tau; FAR = spoof-accepted rate, FRR = live-rejected rate.
// Numerically equal to ACER at the same tau; kept as its own named metric
// because target domains are reported with a transferred threshold.
double Hter(const ScoreSet& set, double tau);

// Equal-error threshold: sweeps the score equivalence classes, finds the
// contiguous run of intervals minimizing |FAR - FRR| (FAR - FRR is monotone
// in tau, so the run is unique), and returns its midpoint.  Throws when only
// one class is present.
double SelectThreshold(const ScoreSet& source_val);

// Softmax posterior of the live class from a (n, 2) logit matrix.
std::vector<double> LivenessScores(const Eigen::MatrixXd& logits);

// Runs the model over one split of a dataset and collects scores.
ScoreSet ScoreDataset(Network* g, Network* h, const DomainDataset& ds,
                      const std::string& split);

struct DomainMetrics {
  double apcer = 0.0, bpcer = 0.0, acer = 0.0, hter = 0.0;
};

struct MetricsReport {
  double threshold = 0.0;
  // keyed by domain name; source entries carry APCER/BPCER/ACER, target
  // entries HTER (all four are filled for completeness)
  std::map<std::string, DomainMetrics> per_domain;
};

// Scores the source test split and every target held-out set at the
// transferred threshold.
MetricsReport Evaluate(Network* g, Network* h, double tau,
                       const DomainDataset& source,
                       const std::string& source_split,
                       const std::vector<const DomainDataset*>& targets,
                       const std::string& target_split);

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // n-1 convention; 0 for a single value
};

Aggregate AggregateValues(const std::vector<double>& values);

}  // namespace fsde

#endif  // FSDE_EVALMETRICS_HPP_
