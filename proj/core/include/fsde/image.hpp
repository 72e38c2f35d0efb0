// core/include/fsde/image.hpp

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

#ifndef FSDE_IMAGE_HPP
#define FSDE_IMAGE_HPP

#include <cstddef>
#include <vector>

namespace fsde {

// Planar image, channel-major (c, h, w), row-major within a channel.
// Pixel values live in [0, 1]; float storage matches the on-disk format.
struct ImageBuf {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> data;

  ImageBuf() = default;
  ImageBuf(int c, int h, int w)
      : channels(c), height(h), width(w),
        data(static_cast<size_t>(c) * h * w, 0.0f) {}

  size_t Size() const { return data.size(); }

  float& At(int c, int y, int x) {
    return data[(static_cast<size_t>(c) * height + y) * width + x];
  }
  float At(int c, int y, int x) const {
    return data[(static_cast<size_t>(c) * height + y) * width + x];
  }

  bool SameShape(const ImageBuf& o) const {
    return channels == o.channels && height == o.height && width == o.width;
  }
};

// Separable Gaussian blur with mirror padding; sigma <= 0 is the identity.
// Operates on a single channel plane of doubles.
void GaussianBlurPlane(std::vector<double>& plane, int h, int w, double sigma);

inline float Clamp01(float v) { return v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v); }
inline double Clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace fsde

#endif  // FSDE_IMAGE_HPP
