/*
 * Copyright 2026 The egan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "egan/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace egan::plot {

namespace {

std::ofstream open_svg(const std::filesystem::path& path, int w, int h,
                       const std::string& title) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n"
      << "<text x=\"10\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";
  return out;
}

void close_svg(std::ofstream& out, const std::filesystem::path& path) {
  out << "</svg>\n";
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

int gray_level(double v) {  // v in [0,1], 0 -> white, 1 -> black
  const double c = std::clamp(1.0 - v, 0.0, 1.0);
  return static_cast<int>(c * 255.0 + 0.5);
}

}  // namespace

void write_scatter_svg(const std::filesystem::path& path,
                       const std::vector<double>& real_xy,
                       const std::vector<double>& fake_xy,
                       const std::string& title) {
  constexpr int kSize = 520, kPad = 30;
  constexpr double kSpan = kSize - 2.0 * kPad;
  auto px = [&](double v) { return kPad + (v + 1.0) / 2.0 * kSpan; };
  auto py = [&](double v) { return kSize - kPad - (v + 1.0) / 2.0 * kSpan; };

  std::ofstream out = open_svg(path, kSize, kSize, title);
  out << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kSpan
      << "\" height=\"" << kSpan
      << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  char buf[160];
  for (std::size_t i = 0; i + 1 < real_xy.size(); i += 2) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.6\" fill=\"#9a9a9a\" "
                  "fill-opacity=\"0.5\"/>\n",
                  px(real_xy[i]), py(real_xy[i + 1]));
    out << buf;
  }
  for (std::size_t i = 0; i + 1 < fake_xy.size(); i += 2) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.6\" fill=\"#1f77b4\" "
                  "fill-opacity=\"0.6\"/>\n",
                  px(fake_xy[i]), py(fake_xy[i + 1]));
    out << buf;
  }
  close_svg(out, path);
}

void write_image_grid_svg(const std::filesystem::path& path,
                          const std::vector<double>& images, std::size_t side,
                          std::size_t count, std::size_t grid_cols,
                          const std::string& title) {
  if (grid_cols == 0) throw std::invalid_argument("grid_cols must be > 0");
  constexpr int kCell = 4, kGap = 6, kTop = 28;
  const std::size_t rows = (count + grid_cols - 1) / grid_cols;
  const int img_px = static_cast<int>(side) * kCell;
  const int w = static_cast<int>(grid_cols) * (img_px + kGap) + kGap;
  const int h = kTop + static_cast<int>(rows) * (img_px + kGap) + kGap;

  std::ofstream out = open_svg(path, w, h, title);
  for (std::size_t n = 0; n < count; ++n) {
    const int ox =
        kGap + static_cast<int>(n % grid_cols) * (img_px + kGap);
    const int oy =
        kTop + kGap + static_cast<int>(n / grid_cols) * (img_px + kGap);
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t x = 0; x < side; ++x) {
        // pixel value -1..1 -> brightness 0..1
        const double v = (images[n * side * side + y * side + x] + 1.0) / 2.0;
        const int g = 255 - gray_level(v);
        out << "<rect x=\"" << ox + static_cast<int>(x) * kCell << "\" y=\""
            << oy + static_cast<int>(y) * kCell << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\" fill=\"rgb(" << g << "," << g
            << "," << g << ")\"/>\n";
      }
    }
  }
  close_svg(out, path);
}

void write_width_strip_svg(const std::filesystem::path& path,
                           const std::vector<double>& widths,
                           std::size_t regions, const std::string& title) {
  if (regions == 0) throw std::invalid_argument("regions must be > 0");
  const std::size_t rows = widths.size() / regions;
  constexpr int kCellW = 22, kCellH = 12, kTop = 28, kLeft = 10;
  const int w = kLeft * 2 + static_cast<int>(regions) * kCellW;
  const int h = kTop + static_cast<int>(rows) * (kCellH + 2) + 10;

  std::ofstream out = open_svg(path, w, h, title);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < regions; ++c) {
      const int g = gray_level(std::clamp(widths[r * regions + c], 0.0, 1.0));
      out << "<rect x=\"" << kLeft + static_cast<int>(c) * kCellW
          << "\" y=\"" << kTop + static_cast<int>(r) * (kCellH + 2)
          << "\" width=\"" << kCellW - 1 << "\" height=\"" << kCellH
          << "\" fill=\"rgb(" << g << "," << g << "," << g << ")\"/>\n";
    }
  }
  close_svg(out, path);
}

}  // namespace egan::plot
