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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace egan::plot {

/// Scatter of two 2-D point sets over [-1,1]^2 (real gray, generated blue).
void write_scatter_svg(const std::filesystem::path& path,
                       const std::vector<double>& real_xy,
                       const std::vector<double>& fake_xy,
                       const std::string& title);

/// Grid of square grayscale images; `images` is count x (side*side) values
/// in [-1,1].
void write_image_grid_svg(const std::filesystem::path& path,
                          const std::vector<double>& images, std::size_t side,
                          std::size_t count, std::size_t grid_cols,
                          const std::string& title);

/// Per-region interval-width heat strips: `widths` is rows x regions values
/// in [0,1], one horizontal strip per row (dark = wide = uncertain).
void write_width_strip_svg(const std::filesystem::path& path,
                           const std::vector<double>& widths,
                           std::size_t regions, const std::string& title);

}  // namespace egan::plot
