// core/include/fsde/canvas.hpp

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

#ifndef FSDE_CANVAS_HPP_
#define FSDE_CANVAS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fsde/image.hpp"

namespace fsde {

struct Color {
  uint8_t r = 0, g = 0, b = 0;
};

// Plain RGB raster with a deterministic 24-bit BMP writer; enough for score
// histograms, loss curves, scatter plots, and image contact sheets without
// pulling in an image library.
class Canvas {
 public:
  Canvas(int width, int height, Color background = {255, 255, 255});

  int width() const { return w_; }
  int height() const { return h_; }

  void Set(int x, int y, Color c);  // out-of-range pixels ignored
  void FillRect(int x0, int y0, int x1, int y1, Color c);  // inclusive corners
  void DrawRect(int x0, int y0, int x1, int y1, Color c);
  void DrawLine(int x0, int y0, int x1, int y1, Color c);
  // Nearest-neighbour blit of a [0,1] float image, channel 0..2 -> R,G,B
  // (single-channel images are replicated to grey).
  void BlitImage(const ImageBuf& img, int x, int y, int scale = 1);

  const std::vector<uint8_t>& Pixels() const { return px_; }
  void SaveBmp(const std::string& path) const;

 private:
  int w_, h_;
  std::vector<uint8_t> px_;  // RGB, row-major from the top-left
};

}  // namespace fsde

#endif  // FSDE_CANVAS_HPP_
