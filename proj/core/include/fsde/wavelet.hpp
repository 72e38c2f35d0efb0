// core/include/fsde/wavelet.hpp

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

#ifndef FSDE_WAVELET_HPP_
#define FSDE_WAVELET_HPP_

#include <vector>

#include "fsde/image.hpp"

namespace fsde {

// One subband of a multi-channel plane: per-channel coefficient grids.
struct Subband {
  int height = 0;
  int width = 0;
  std::vector<std::vector<double>> ch;  // [channel][y * width + x]
};

// Analysis record of one pyramid level.  The ll band of a non-deepest level
// is the input to the next level's analysis; reconstruction reads only the
// deepest ll plus every level's detail bands.
struct WaveletLevel {
  Subband ll, lh, hl, hh;
};

struct WaveletPyramid {
  int depth = 0;
  int channels = 0;
  int height = 0;  // input plane height
  int width = 0;   // input plane width
  std::vector<WaveletLevel> levels;  // levels[0] is the finest
};

// Orthonormal 2x2 Haar analysis of one plane.  For the block
//   a = in(2y, 2x),   b = in(2y, 2x+1),
//   c = in(2y+1, 2x), d = in(2y+1, 2x+1):
//   ll = (a+b+c+d)/2, lh = (a+b-c-d)/2, hl = (a-b+c-d)/2, hh = (a-b-c+d)/2.
void HaarAnalyzeStep(const std::vector<double>& in, int height, int width,
                     std::vector<double>* ll, std::vector<double>* lh,
                     std::vector<double>* hl, std::vector<double>* hh);

// Exact inverse of HaarAnalyzeStep; h2, w2 are the subband dims.
void HaarSynthesizeStep(const std::vector<double>& ll,
                        const std::vector<double>& lh,
                        const std::vector<double>& hl,
                        const std::vector<double>& hh, int h2, int w2,
                        std::vector<double>* out);

int MaxWaveletDepth(int height, int width);

// Requires height and width divisible by 2^depth; throws otherwise.
WaveletPyramid HaarDecompose(const ImageBuf& image, int depth);

// Inverse of HaarDecompose.  Uses the deepest ll and all detail bands; the
// shallower ll bands are analysis by-products and are ignored here.  Throws
// on inconsistent subband shapes.  No clamping.
ImageBuf HaarReconstruct(const WaveletPyramid& pyr);

double SubbandEnergy(const Subband& band);
// Sum of squares over the non-redundant coefficients (deepest ll + details).
double PyramidEnergy(const WaveletPyramid& pyr);
double ImageEnergy(const ImageBuf& image);

}  // namespace fsde

#endif  // FSDE_WAVELET_HPP_
