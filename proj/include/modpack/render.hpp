// Copyright 2026 The modpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "modpack/packer.hpp"
#include "modpack/schedule_io.hpp"

namespace modpack {

enum class RenderFormat { Ascii, Svg };

struct RenderSpec {
  RenderFormat format = RenderFormat::Ascii;
  /// Schedule columns per output cell (one character, or 8 px in SVG).
  int column_scale = 1;
  bool show_masks = true;
  std::string intra_color = "#d62728";  // red
  std::string inter_color = "#1f77b4";  // blue
  std::string mask_color = "#9ecae1";
  MaskBasis mask_basis = MaskBasis::ModulesSpanned;
};

/// Rows top to bottom, columns left to right. '#' intra, '@' inter, '~' mask,
/// '.' idle; a rule of '-' under the last row of each module.
std::string render_ascii(const Schedule& s, const TileSet& tiles, const RenderSpec& spec = {});

/// Minimal rect/line/text markup; masks are drawn first so tiles sit on top.
std::string render_svg(const Schedule& s, const TileSet& tiles, const RenderSpec& spec = {});

std::string render(const Schedule& s, const TileSet& tiles, const RenderSpec& spec = {});

}  // namespace modpack
