// tools/plots.hpp

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

#ifndef FSDE_TOOLS_PLOTS_HPP_
#define FSDE_TOOLS_PLOTS_HPP_

#include <string>
#include <vector>

#include "fsde/evalmetrics.hpp"
#include "fsde/losses.hpp"
#include "fsde/stylizer.hpp"
#include "fsde/trainer.hpp"

namespace fsde {

// Per-set score histograms (40 bins over [0,1]), live and spoof side by
// side within each bin, stacked one panel per set, with the decision
// threshold drawn as a vertical line.
void RenderScoreHistograms(const std::string& path,
                           const std::vector<ScoreSet>& sets, double tau);

// One polyline per loss column of a training log, each series scaled to its
// own range so shape stays visible across magnitudes; the stage switch is
// marked with a vertical line.
void RenderLossCurves(const std::string& path,
                      const std::vector<StepLogRow>& log);

// Rows projected onto their top-2 principal axes, colored by domain; live
// points are filled squares, spoof points hollow.
void RenderFeatureScatter(const std::string& path,
                          const Eigen::MatrixXd& features,
                          const std::vector<RowMeta>& meta);

// Rows of (content, style, stylized) image triples from an aux build.
void RenderContactSheet(const std::string& path, const DomainDataset& src,
                        const DomainDataset& tgt, const DomainDataset& aux,
                        const std::vector<AuxProvenance>& prov,
                        int max_rows = 8);

}  // namespace fsde

#endif  // FSDE_TOOLS_PLOTS_HPP_
