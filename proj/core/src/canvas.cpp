// core/src/canvas.cpp

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

#include "fsde/canvas.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fsde {

Canvas::Canvas(int width, int height, Color background) : w_(width), h_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("canvas dimensions must be positive");
  }
  px_.resize(static_cast<size_t>(w_) * h_ * 3);
  for (int y = 0; y < h_; ++y) {
    for (int x = 0; x < w_; ++x) Set(x, y, background);
  }
}

void Canvas::Set(int x, int y, Color c) {
  if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
  uint8_t* p = &px_[(static_cast<size_t>(y) * w_ + x) * 3];
  p[0] = c.r;
  p[1] = c.g;
  p[2] = c.b;
}

void Canvas::FillRect(int x0, int y0, int x1, int y1, Color c) {
  if (x0 > x1) std::swap(x0, x1);
  if (y0 > y1) std::swap(y0, y1);
  for (int y = std::max(0, y0); y <= std::min(h_ - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(w_ - 1, x1); ++x) Set(x, y, c);
  }
}

void Canvas::DrawRect(int x0, int y0, int x1, int y1, Color c) {
  DrawLine(x0, y0, x1, y0, c);
  DrawLine(x1, y0, x1, y1, c);
  DrawLine(x1, y1, x0, y1, c);
  DrawLine(x0, y1, x0, y0, c);
}

void Canvas::DrawLine(int x0, int y0, int x1, int y1, Color c) {
  // Bresenham over the integer grid.
  const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    Set(x0, y0, c);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void Canvas::BlitImage(const ImageBuf& img, int x, int y, int scale) {
  if (scale < 1) throw std::invalid_argument("blit scale must be >= 1");
  for (int iy = 0; iy < img.height; ++iy) {
    for (int ix = 0; ix < img.width; ++ix) {
      Color c;
      auto to_byte = [](float v) {
        const float clamped = std::min(1.0f, std::max(0.0f, v));
        return static_cast<uint8_t>(std::lround(clamped * 255.0f));
      };
      if (img.channels >= 3) {
        c = {to_byte(img.At(0, iy, ix)), to_byte(img.At(1, iy, ix)),
             to_byte(img.At(2, iy, ix))};
      } else {
        const uint8_t g = to_byte(img.At(0, iy, ix));
        c = {g, g, g};
      }
      FillRect(x + ix * scale, y + iy * scale, x + ix * scale + scale - 1,
               y + iy * scale + scale - 1, c);
    }
  }
}

void Canvas::SaveBmp(const std::string& path) const {
  // 24-bit uncompressed BMP: BITMAPFILEHEADER + BITMAPINFOHEADER, rows
  // bottom-up, each padded to a 4-byte boundary.
  const int row_bytes = w_ * 3;
  const int pad = (4 - row_bytes % 4) % 4;
  const uint32_t data_size = static_cast<uint32_t>((row_bytes + pad) * h_);
  const uint32_t file_size = 54 + data_size;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for write: " + path);

  auto put16 = [&out](uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
  };
  auto put32 = [&out](uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff),
                 static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
  };

  out.write("BM", 2);
  put32(file_size);
  put32(0);       // reserved
  put32(54);      // pixel data offset
  put32(40);      // info header size
  put32(static_cast<uint32_t>(w_));
  put32(static_cast<uint32_t>(h_));
  put16(1);       // planes
  put16(24);      // bits per pixel
  put32(0);       // no compression
  put32(data_size);
  put32(2835);    // 72 dpi
  put32(2835);
  put32(0);       // palette
  put32(0);

  const char zeros[4] = {0, 0, 0, 0};
  for (int y = h_ - 1; y >= 0; --y) {
    for (int x = 0; x < w_; ++x) {
      const uint8_t* p = &px_[(static_cast<size_t>(y) * w_ + x) * 3];
      const char bgr[3] = {static_cast<char>(p[2]), static_cast<char>(p[1]),
                           static_cast<char>(p[0])};
      out.write(bgr, 3);
    }
    out.write(zeros, pad);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fsde
