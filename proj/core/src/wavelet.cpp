// core/src/wavelet.cpp

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

#include "fsde/wavelet.hpp"

#include <stdexcept>
#include <string>

namespace fsde {

void HaarAnalyzeStep(const std::vector<double>& in, int height, int width,
                     std::vector<double>* ll, std::vector<double>* lh,
                     std::vector<double>* hl, std::vector<double>* hh) {
  if (height % 2 != 0 || width % 2 != 0) {
    throw std::invalid_argument("haar analysis needs even dims, got " +
                                std::to_string(height) + "x" +
                                std::to_string(width));
  }
  const int h2 = height / 2, w2 = width / 2;
  ll->assign(static_cast<size_t>(h2) * w2, 0.0);
  lh->assign(static_cast<size_t>(h2) * w2, 0.0);
  hl->assign(static_cast<size_t>(h2) * w2, 0.0);
  hh->assign(static_cast<size_t>(h2) * w2, 0.0);
  for (int y = 0; y < h2; ++y) {
    for (int x = 0; x < w2; ++x) {
      double a = in[static_cast<size_t>(2 * y) * width + 2 * x];
      double b = in[static_cast<size_t>(2 * y) * width + 2 * x + 1];
      double c = in[static_cast<size_t>(2 * y + 1) * width + 2 * x];
      double d = in[static_cast<size_t>(2 * y + 1) * width + 2 * x + 1];
      size_t i = static_cast<size_t>(y) * w2 + x;
      (*ll)[i] = 0.5 * (a + b + c + d);
      (*lh)[i] = 0.5 * (a + b - c - d);
      (*hl)[i] = 0.5 * (a - b + c - d);
      (*hh)[i] = 0.5 * (a - b - c + d);
    }
  }
}

void HaarSynthesizeStep(const std::vector<double>& ll,
                        const std::vector<double>& lh,
                        const std::vector<double>& hl,
                        const std::vector<double>& hh, int h2, int w2,
                        std::vector<double>* out) {
  const size_t n = static_cast<size_t>(h2) * w2;
  if (ll.size() != n || lh.size() != n || hl.size() != n || hh.size() != n) {
    throw std::invalid_argument("haar synthesis subband size mismatch");
  }
  const int height = 2 * h2, width = 2 * w2;
  out->assign(static_cast<size_t>(height) * width, 0.0);
  for (int y = 0; y < h2; ++y) {
    for (int x = 0; x < w2; ++x) {
      size_t i = static_cast<size_t>(y) * w2 + x;
      double s_ll = ll[i], s_lh = lh[i], s_hl = hl[i], s_hh = hh[i];
      (*out)[static_cast<size_t>(2 * y) * width + 2 * x] =
          0.5 * (s_ll + s_lh + s_hl + s_hh);
      (*out)[static_cast<size_t>(2 * y) * width + 2 * x + 1] =
          0.5 * (s_ll + s_lh - s_hl - s_hh);
      (*out)[static_cast<size_t>(2 * y + 1) * width + 2 * x] =
          0.5 * (s_ll - s_lh + s_hl - s_hh);
      (*out)[static_cast<size_t>(2 * y + 1) * width + 2 * x + 1] =
          0.5 * (s_ll - s_lh - s_hl + s_hh);
    }
  }
}

int MaxWaveletDepth(int height, int width) {
  int depth = 0;
  while (height % 2 == 0 && width % 2 == 0 && height >= 2 && width >= 2) {
    height /= 2;
    width /= 2;
    ++depth;
  }
  return depth;
}

namespace {

Subband MakeBand(int channels, int h, int w) {
  Subband band;
  band.height = h;
  band.width = w;
  band.ch.assign(channels, std::vector<double>(static_cast<size_t>(h) * w, 0.0));
  return band;
}

void CheckBand(const Subband& band, int channels, int h, int w,
               const char* name) {
  if (band.height != h || band.width != w ||
      static_cast<int>(band.ch.size()) != channels) {
    throw std::invalid_argument(std::string("pyramid band ") + name +
                                " has inconsistent shape");
  }
  for (const auto& plane : band.ch) {
    if (plane.size() != static_cast<size_t>(h) * w) {
      throw std::invalid_argument(std::string("pyramid band ") + name +
                                  " has inconsistent plane size");
    }
  }
}

}  // namespace

WaveletPyramid HaarDecompose(const ImageBuf& image, int depth) {
  if (depth < 1) throw std::invalid_argument("wavelet depth must be >= 1");
  if (depth > MaxWaveletDepth(image.height, image.width)) {
    throw std::invalid_argument(
        "image dims " + std::to_string(image.height) + "x" +
        std::to_string(image.width) + " not divisible by 2^" +
        std::to_string(depth));
  }
  WaveletPyramid pyr;
  pyr.depth = depth;
  pyr.channels = image.channels;
  pyr.height = image.height;
  pyr.width = image.width;

  for (int c = 0; c < image.channels; ++c) {
    int h = image.height, w = image.width;
    std::vector<double> cur(static_cast<size_t>(h) * w);
    for (size_t i = 0; i < cur.size(); ++i) {
      cur[i] = image.data[static_cast<size_t>(c) * h * w + i];
    }
    for (int level = 0; level < depth; ++level) {
      if (c == 0) {
        pyr.levels.push_back(WaveletLevel{
            MakeBand(image.channels, h / 2, w / 2),
            MakeBand(image.channels, h / 2, w / 2),
            MakeBand(image.channels, h / 2, w / 2),
            MakeBand(image.channels, h / 2, w / 2)});
      }
      WaveletLevel& lev = pyr.levels[level];
      HaarAnalyzeStep(cur, h, w, &lev.ll.ch[c], &lev.lh.ch[c], &lev.hl.ch[c],
                      &lev.hh.ch[c]);
      cur = lev.ll.ch[c];
      h /= 2;
      w /= 2;
    }
  }
  return pyr;
}

ImageBuf HaarReconstruct(const WaveletPyramid& pyr) {
  if (pyr.depth < 1 || static_cast<int>(pyr.levels.size()) != pyr.depth) {
    throw std::invalid_argument("pyramid depth/levels mismatch");
  }
  int h = pyr.height, w = pyr.width;
  for (int level = 0; level < pyr.depth; ++level) {
    h /= 2;
    w /= 2;
    CheckBand(pyr.levels[level].ll, pyr.channels, h, w, "ll");
    CheckBand(pyr.levels[level].lh, pyr.channels, h, w, "lh");
    CheckBand(pyr.levels[level].hl, pyr.channels, h, w, "hl");
    CheckBand(pyr.levels[level].hh, pyr.channels, h, w, "hh");
  }

  ImageBuf out(pyr.channels, pyr.height, pyr.width);
  for (int c = 0; c < pyr.channels; ++c) {
    std::vector<double> cur = pyr.levels[pyr.depth - 1].ll.ch[c];
    for (int level = pyr.depth - 1; level >= 0; --level) {
      const WaveletLevel& lev = pyr.levels[level];
      std::vector<double> up;
      HaarSynthesizeStep(cur, lev.lh.ch[c], lev.hl.ch[c], lev.hh.ch[c],
                         lev.ll.height, lev.ll.width, &up);
      cur = std::move(up);
    }
    for (size_t i = 0; i < cur.size(); ++i) {
      out.data[static_cast<size_t>(c) * pyr.height * pyr.width + i] =
          static_cast<float>(cur[i]);
    }
  }
  return out;
}

double SubbandEnergy(const Subband& band) {
  double e = 0.0;
  for (const auto& plane : band.ch) {
    for (double v : plane) e += v * v;
  }
  return e;
}

double PyramidEnergy(const WaveletPyramid& pyr) {
  double e = 0.0;
  for (int level = 0; level < pyr.depth; ++level) {
    e += SubbandEnergy(pyr.levels[level].lh);
    e += SubbandEnergy(pyr.levels[level].hl);
    e += SubbandEnergy(pyr.levels[level].hh);
  }
  if (pyr.depth > 0) e += SubbandEnergy(pyr.levels[pyr.depth - 1].ll);
  return e;
}

double ImageEnergy(const ImageBuf& image) {
  double e = 0.0;
  for (float v : image.data) e += static_cast<double>(v) * v;
  return e;
}

}  // namespace fsde
