// core/include/fsde/stylizer.hpp

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

#ifndef FSDE_STYLIZER_HPP_
#define FSDE_STYLIZER_HPP_

#include <cstdint>
#include <vector>

#include "fsde/synthdata.hpp"

namespace fsde {

// Wavelet-domain whitening-coloring style transfer.  Statistics of the
// coarse bands are moved from content to style while fine detail bands keep
// the content coefficients, so the class-evidence texture survives.
struct StylizerConfig {
  int wavelet_depth = 2;
  double alpha = 1.0;      // blend between content (0) and stylized (1)
  double aux_ratio = 0.1;  // aux size as a fraction of the source train set
  double eig_floor = 1e-5;
  // Detail bands at levels >= detail_min_level (1 = finest) are blended at
  // alpha/2; finer detail bands keep the content coefficients unchanged.
  int detail_min_level = 2;

  void Validate() const;  // throws on out-of-range fields
};

struct AuxProvenance {
  int aux_index = 0;
  int content_index = 0;  // index into the source dataset's samples
  int style_index = 0;    // index into the target dataset's samples
  double alpha = 0.0;
};

// Transfers style statistics onto the content image.  Requires equal image
// shapes and equal labels; output keeps the content's label and subject and
// is tagged as the aux domain.
Sample Stylize(const Sample& content, const Sample& style,
               const StylizerConfig& cfg);

// Builds the auxiliary domain: 2*round(aux_ratio*|src train|/2) samples,
// half per class, each stylized from a same-class (source content, target
// style) pair drawn with replacement.  Deterministic under seed.  Throws if
// fewer than 2 samples would be produced.
DomainDataset BuildAuxDomain(const DomainDataset& src,
                             const DomainDataset& tgt,
                             const StylizerConfig& cfg, uint64_t seed,
                             std::vector<AuxProvenance>* provenance = nullptr);

}  // namespace fsde

#endif  // FSDE_STYLIZER_HPP_
