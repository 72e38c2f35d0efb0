// core/include/fsde/wct.hpp

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

#ifndef FSDE_WCT_HPP_
#define FSDE_WCT_HPP_

#include <Eigen/Dense>

namespace fsde {

// Second-order statistics of a (channels x samples) feature matrix.
// Covariance is the population form (divide by n).  Eigenvalues are clamped
// to zero then floored at eig_floor so the whitener is always finite.
struct FeatureStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;    // unfloored, symmetric
  Eigen::VectorXd eigenvalues;   // floored, ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, same order
  double eig_floor = 0.0;

  Eigen::MatrixXd FlooredCovariance() const;  // E diag(ev) E^T
  Eigen::MatrixXd Whitener() const;           // E diag(ev^-1/2) E^T
  Eigen::MatrixXd Colorer() const;            // E diag(ev^1/2) E^T
};

// features: C x n with n >= 2 (throws otherwise); eig_floor > 0.
FeatureStats ComputeStats(const Eigen::MatrixXd& features, double eig_floor);

// Whitener() * (f - mean), columnwise.  Output has ~identity covariance in
// the unfloored directions.
Eigen::MatrixXd WhitenFeatures(const Eigen::MatrixXd& features,
                               const FeatureStats& stats);

// Colorer() * w + mean, columnwise.  Inverse of WhitenFeatures under the
// same stats.
Eigen::MatrixXd ColorFeatures(const Eigen::MatrixXd& whitened,
                              const FeatureStats& stats);

}  // namespace fsde

#endif  // FSDE_WCT_HPP_
