// core/src/wct.cpp

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

#include "fsde/wct.hpp"

#include <stdexcept>

namespace fsde {

Eigen::MatrixXd FeatureStats::FlooredCovariance() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

Eigen::MatrixXd FeatureStats::Whitener() const {
  Eigen::VectorXd inv_sqrt = eigenvalues.array().sqrt().inverse();
  return eigenvectors * inv_sqrt.asDiagonal() * eigenvectors.transpose();
}

Eigen::MatrixXd FeatureStats::Colorer() const {
  Eigen::VectorXd sqrt_ev = eigenvalues.array().sqrt();
  return eigenvectors * sqrt_ev.asDiagonal() * eigenvectors.transpose();
}

FeatureStats ComputeStats(const Eigen::MatrixXd& features, double eig_floor) {
  const Eigen::Index n = features.cols();
  if (n < 2) {
    throw std::invalid_argument("ComputeStats needs >= 2 feature columns");
  }
  if (!(eig_floor > 0.0)) {
    throw std::invalid_argument("eig_floor must be > 0");
  }
  FeatureStats stats;
  stats.eig_floor = eig_floor;
  stats.mean = features.rowwise().mean();
  Eigen::MatrixXd centered = features.colwise() - stats.mean;
  stats.covariance = (centered * centered.transpose()) / static_cast<double>(n);
  // Symmetrize before decomposition to kill accumulation asymmetry.
  stats.covariance = 0.5 * (stats.covariance + stats.covariance.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(stats.covariance);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("covariance eigendecomposition failed");
  }
  stats.eigenvalues = solver.eigenvalues().cwiseMax(0.0).cwiseMax(eig_floor);
  stats.eigenvectors = solver.eigenvectors();
  return stats;
}

Eigen::MatrixXd WhitenFeatures(const Eigen::MatrixXd& features,
                               const FeatureStats& stats) {
  if (features.rows() != stats.mean.size()) {
    throw std::invalid_argument("feature/stats channel mismatch");
  }
  return stats.Whitener() * (features.colwise() - stats.mean);
}

Eigen::MatrixXd ColorFeatures(const Eigen::MatrixXd& whitened,
                              const FeatureStats& stats) {
  if (whitened.rows() != stats.mean.size()) {
    throw std::invalid_argument("feature/stats channel mismatch");
  }
  return (stats.Colorer() * whitened).colwise() + stats.mean;
}

}  // namespace fsde
