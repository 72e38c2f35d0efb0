// core/src/stylizer.cpp

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

#include "fsde/stylizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fsde/rng.hpp"
#include "fsde/wavelet.hpp"
#include "fsde/wct.hpp"

namespace fsde {

namespace {

constexpr uint64_t kAuxStream = 0x415558u;

Eigen::MatrixXd BandToMatrix(const Subband& band) {
  const Eigen::Index n = static_cast<Eigen::Index>(band.height) * band.width;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(band.ch.size()), n);
  for (size_t c = 0; c < band.ch.size(); ++c) {
    for (Eigen::Index i = 0; i < n; ++i) m(static_cast<Eigen::Index>(c), i) = band.ch[c][i];
  }
  return m;
}

void MatrixToBand(const Eigen::MatrixXd& m, Subband* band) {
  for (size_t c = 0; c < band->ch.size(); ++c) {
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      band->ch[c][i] = m(static_cast<Eigen::Index>(c), i);
    }
  }
}

// stylized = color(whiten(content, content stats), style stats), then
// band <- blend*stylized + (1-blend)*content.
void TransferBand(const Subband& style_band, double blend, double eig_floor,
                  Subband* content_band) {
  if (blend == 0.0) return;
  Eigen::MatrixXd content = BandToMatrix(*content_band);
  Eigen::MatrixXd style = BandToMatrix(style_band);
  FeatureStats cs = ComputeStats(content, eig_floor);
  FeatureStats ss = ComputeStats(style, eig_floor);
  Eigen::MatrixXd stylized = ColorFeatures(WhitenFeatures(content, cs), ss);
  MatrixToBand(blend * stylized + (1.0 - blend) * content, content_band);
}

}  // namespace

void StylizerConfig::Validate() const {
  if (wavelet_depth < 1) throw std::invalid_argument("wavelet_depth must be >= 1");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0,1]");
  if (!(aux_ratio > 0.0)) throw std::invalid_argument("aux_ratio must be > 0");
  if (!(eig_floor > 0.0)) throw std::invalid_argument("eig_floor must be > 0");
  if (detail_min_level < 1) throw std::invalid_argument("detail_min_level must be >= 1");
}

Sample Stylize(const Sample& content, const Sample& style,
               const StylizerConfig& cfg) {
  cfg.Validate();
  if (content.label != style.label) {
    throw std::invalid_argument("stylize requires same-class pair, got labels " +
                                std::to_string(content.label) + " and " +
                                std::to_string(style.label));
  }
  if (!content.image.SameShape(style.image)) {
    throw std::invalid_argument("stylize requires equal image shapes");
  }

  Sample out;
  out.label = content.label;
  out.domain = DomainKind::kAux;
  out.domain_name = "aux";
  out.subject_id = content.subject_id;

  if (cfg.alpha == 0.0) {
    out.image = content.image;  // exact content identity
    return out;
  }

  WaveletPyramid pc = HaarDecompose(content.image, cfg.wavelet_depth);
  WaveletPyramid ps = HaarDecompose(style.image, cfg.wavelet_depth);

  for (int level = 0; level < cfg.wavelet_depth; ++level) {
    const bool deepest = level == cfg.wavelet_depth - 1;
    const double detail_blend =
        (level + 1 >= cfg.detail_min_level) ? 0.5 * cfg.alpha : 0.0;
    TransferBand(ps.levels[level].lh, detail_blend, cfg.eig_floor,
                 &pc.levels[level].lh);
    TransferBand(ps.levels[level].hl, detail_blend, cfg.eig_floor,
                 &pc.levels[level].hl);
    TransferBand(ps.levels[level].hh, detail_blend, cfg.eig_floor,
                 &pc.levels[level].hh);
    if (deepest) {
      TransferBand(ps.levels[level].ll, cfg.alpha, cfg.eig_floor,
                   &pc.levels[level].ll);
    }
  }

  out.image = HaarReconstruct(pc);
  for (float& v : out.image.data) v = Clamp01(v);
  return out;
}

DomainDataset BuildAuxDomain(const DomainDataset& src,
                             const DomainDataset& tgt,
                             const StylizerConfig& cfg, uint64_t seed,
                             std::vector<AuxProvenance>* provenance) {
  cfg.Validate();
  std::vector<int> src_pool = src.TrainPool();
  std::vector<int> tgt_pool = tgt.TrainPool();
  const long per_class =
      std::lround(cfg.aux_ratio * static_cast<double>(src_pool.size()) / 2.0);
  const long n_aux = 2 * per_class;
  if (n_aux < 2) {
    throw std::invalid_argument(
        "aux_ratio " + std::to_string(cfg.aux_ratio) + " of " +
        std::to_string(src_pool.size()) +
        " source samples rounds below 2 aux samples");
  }

  std::vector<std::vector<int>> src_by_label{src.PoolByLabel(src_pool, kSpoof),
                                             src.PoolByLabel(src_pool, kLive)};
  std::vector<std::vector<int>> tgt_by_label{tgt.PoolByLabel(tgt_pool, kSpoof),
                                             tgt.PoolByLabel(tgt_pool, kLive)};
  for (int label : {kSpoof, kLive}) {
    if (src_by_label[label].empty() || tgt_by_label[label].empty()) {
      throw std::invalid_argument(
          std::string("aux build needs both classes in source and target "
                      "train pools; missing ") +
          (label == kLive ? "live" : "spoof"));
    }
  }

  DomainDataset aux;
  aux.name = "aux_" + tgt.name;
  aux.kind = DomainKind::kAux;
  aux.spec = src.spec;
  aux.spec.name = aux.name;
  aux.spec.kind = DomainKind::kAux;
  aux.seed = seed;
  aux.samples.reserve(n_aux);

  Rng rng(DeriveSeed(seed, {kAuxStream}));
  for (int label : {kLive, kSpoof}) {
    for (long k = 0; k < per_class; ++k) {
      int ci = src_by_label[label][rng.UniformInt(
          0, static_cast<int64_t>(src_by_label[label].size()) - 1)];
      int si = tgt_by_label[label][rng.UniformInt(
          0, static_cast<int64_t>(tgt_by_label[label].size()) - 1)];
      Sample stylized = Stylize(src.samples[ci], tgt.samples[si], cfg);
      stylized.domain_name = aux.name;
      if (provenance != nullptr) {
        provenance->push_back({static_cast<int>(aux.samples.size()), ci, si,
                               cfg.alpha});
      }
      aux.samples.push_back(std::move(stylized));
    }
  }

  std::vector<int> all(aux.samples.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  aux.splits["train"] = all;
  return aux;
}

}  // namespace fsde
