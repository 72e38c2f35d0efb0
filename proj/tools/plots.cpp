// tools/plots.cpp

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

#include "plots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "fsde/canvas.hpp"

namespace fsde {

namespace {

constexpr Color kLiveColor{40, 140, 60};
constexpr Color kSpoofColor{190, 60, 50};
constexpr Color kAxis{60, 60, 60};
constexpr Color kGrid{225, 225, 225};

const Color kSeries[7] = {
    {30, 30, 30},    // total
    {60, 100, 200},  // cls
    {40, 140, 60},   // sem
    {150, 110, 30},  // sep
    {190, 60, 50},   // adv ta
    {140, 60, 170},  // adv cs
    {0, 150, 160},   // lfc
};

const Color kDomainColors[3] = {
    {60, 100, 200},  // source
    {190, 60, 50},   // target
    {40, 140, 60},   // aux
};

void Marker(Canvas* cv, int x, int y, Color c, bool filled) {
  if (filled) {
    cv->FillRect(x - 2, y - 2, x + 2, y + 2, c);
  } else {
    cv->DrawRect(x - 2, y - 2, x + 2, y + 2, c);
  }
}

}  // namespace

void RenderScoreHistograms(const std::string& path,
                           const std::vector<ScoreSet>& sets, double tau) {
  if (sets.empty()) throw std::invalid_argument("no score sets to plot");
  constexpr int kBins = 40;
  constexpr int kPanelW = 480, kPanelH = 140, kMargin = 24;
  Canvas cv(kPanelW + 2 * kMargin,
            static_cast<int>(sets.size()) * (kPanelH + kMargin) + kMargin);

  for (size_t si = 0; si < sets.size(); ++si) {
    const ScoreSet& set = sets[si];
    const int top = kMargin + static_cast<int>(si) * (kPanelH + kMargin);
    const int bottom = top + kPanelH;
    std::vector<int> live(kBins, 0), spoof(kBins, 0);
    int peak = 1;
    for (size_t i = 0; i < set.scores.size(); ++i) {
      int b = static_cast<int>(set.scores[i] * kBins);
      b = std::clamp(b, 0, kBins - 1);
      int& cell = set.labels[i] == kLive ? live[b] : spoof[b];
      peak = std::max(peak, ++cell);
    }
    cv.DrawRect(kMargin, top, kMargin + kPanelW, bottom, kAxis);
    const double bin_w = static_cast<double>(kPanelW) / kBins;
    for (int b = 0; b < kBins; ++b) {
      const int x0 = kMargin + static_cast<int>(b * bin_w);
      const int x1 = kMargin + static_cast<int>((b + 1) * bin_w) - 1;
      const int xm = (x0 + x1) / 2;
      const int hl = live[b] * (kPanelH - 4) / peak;
      const int hs = spoof[b] * (kPanelH - 4) / peak;
      if (hl > 0) cv.FillRect(x0 + 1, bottom - hl, xm, bottom - 1, kLiveColor);
      if (hs > 0) cv.FillRect(xm + 1, bottom - hs, x1, bottom - 1, kSpoofColor);
    }
    const int tx = kMargin + static_cast<int>(tau * kPanelW);
    cv.DrawLine(tx, top, tx, bottom, kAxis);
    // domain tag: one swatch per panel at the top-left corner
    cv.FillRect(kMargin + 4, top + 4, kMargin + 10, top + 10,
                kDomainColors[si % 3]);
  }
  cv.SaveBmp(path);
}

void RenderLossCurves(const std::string& path,
                      const std::vector<StepLogRow>& log) {
  if (log.empty()) throw std::invalid_argument("empty step log");
  constexpr int kW = 640, kH = 360, kMargin = 30;
  Canvas cv(kW + 2 * kMargin, kH + 2 * kMargin);
  cv.DrawRect(kMargin, kMargin, kMargin + kW, kMargin + kH, kAxis);
  for (int q = 1; q < 4; ++q) {
    const int y = kMargin + q * kH / 4;
    cv.DrawLine(kMargin + 1, y, kMargin + kW - 1, y, kGrid);
  }

  const int n = static_cast<int>(log.size());
  auto x_of = [&](int i) {
    return kMargin + (n == 1 ? kW / 2 : i * kW / (n - 1));
  };
  // mark the first step whose stage differs from the first row's
  for (int i = 1; i < n; ++i) {
    if (log[i].stage != log[0].stage) {
      cv.DrawLine(x_of(i), kMargin, x_of(i), kMargin + kH, kGrid);
      break;
    }
  }

  double StepLogRow::*cols[7] = {
      &StepLogRow::l_total,  &StepLogRow::l_cls,    &StepLogRow::l_sem,
      &StepLogRow::l_sep,    &StepLogRow::l_adv_ta, &StepLogRow::l_adv_cs,
      &StepLogRow::l_lfc,
  };
  for (int s = 0; s < 7; ++s) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const StepLogRow& r : log) {
      const double v = r.*cols[s];
      if (!std::isfinite(v)) continue;
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
    if (!any) continue;
    const double span = hi - lo > 1e-12 ? hi - lo : 1.0;
    int px = -1, py = -1;
    for (int i = 0; i < n; ++i) {
      const double v = log[i].*cols[s];
      if (!std::isfinite(v)) continue;
      const int x = x_of(i);
      const int y =
          kMargin + kH - 2 - static_cast<int>((v - lo) / span * (kH - 4));
      if (px >= 0) cv.DrawLine(px, py, x, y, kSeries[s]);
      px = x;
      py = y;
    }
    // legend swatch strip above the frame
    const int lx = kMargin + s * 40;
    cv.FillRect(lx, kMargin - 14, lx + 24, kMargin - 8, kSeries[s]);
  }
  cv.SaveBmp(path);
}

void RenderFeatureScatter(const std::string& path,
                          const Eigen::MatrixXd& features,
                          const std::vector<RowMeta>& meta) {
  if (features.rows() < 2 ||
      features.rows() != static_cast<Eigen::Index>(meta.size())) {
    throw std::invalid_argument("feature scatter needs >= 2 tagged rows");
  }
  const Eigen::MatrixXd centered =
      features.rowwise() - features.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered /
                              static_cast<double>(features.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::Index d = cov.rows();
  Eigen::MatrixXd axes(d, 2);  // eigenvalues ascend: take the last two
  axes.col(0) = eig.eigenvectors().col(d - 1);
  axes.col(1) = d >= 2 ? eig.eigenvectors().col(d - 2)
                       : Eigen::VectorXd::Zero(d).eval();
  const Eigen::MatrixXd xy = centered * axes;

  constexpr int kW = 480, kH = 480, kMargin = 24;
  Canvas cv(kW + 2 * kMargin, kH + 2 * kMargin);
  cv.DrawRect(kMargin, kMargin, kMargin + kW, kMargin + kH, kAxis);
  const double x_lo = xy.col(0).minCoeff(), x_hi = xy.col(0).maxCoeff();
  const double y_lo = xy.col(1).minCoeff(), y_hi = xy.col(1).maxCoeff();
  const double xs = x_hi - x_lo > 1e-12 ? x_hi - x_lo : 1.0;
  const double ys = y_hi - y_lo > 1e-12 ? y_hi - y_lo : 1.0;
  for (Eigen::Index i = 0; i < xy.rows(); ++i) {
    const int x =
        kMargin + 4 + static_cast<int>((xy(i, 0) - x_lo) / xs * (kW - 8));
    const int y =
        kMargin + 4 + static_cast<int>((y_hi - xy(i, 1)) / ys * (kH - 8));
    const Color c = kDomainColors[static_cast<int>(meta[i].domain) % 3];
    Marker(&cv, x, y, c, meta[i].label == kLive);
  }
  cv.SaveBmp(path);
}

void RenderContactSheet(const std::string& path, const DomainDataset& src,
                        const DomainDataset& tgt, const DomainDataset& aux,
                        const std::vector<AuxProvenance>& prov,
                        int max_rows) {
  if (prov.empty()) throw std::invalid_argument("no provenance rows");
  const int rows = std::min<int>(max_rows, static_cast<int>(prov.size()));
  constexpr int kScale = 3, kPad = 6;
  const int ih = aux.samples.at(0).image.height * kScale;
  const int iw = aux.samples.at(0).image.width * kScale;
  Canvas cv(3 * iw + 4 * kPad, rows * (ih + kPad) + kPad);
  for (int r = 0; r < rows; ++r) {
    const AuxProvenance& p = prov[r];
    const int y = kPad + r * (ih + kPad);
    cv.BlitImage(src.samples.at(p.content_index).image, kPad, y, kScale);
    cv.BlitImage(tgt.samples.at(p.style_index).image, 2 * kPad + iw, y, kScale);
    cv.BlitImage(aux.samples.at(p.aux_index).image, 3 * kPad + 2 * iw, y,
                 kScale);
  }
  cv.SaveBmp(path);
}

}  // namespace fsde
