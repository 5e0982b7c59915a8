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
#include <string_view>
#include <vector>

#include "modpack/ansatz.hpp"
#include "modpack/jw_compile.hpp"
#include "modpack/packer.hpp"

namespace modpack {

// Formats are documented in docs/formats.md.

struct TileSet {
  ModuleLayout layout;
  std::vector<CircuitTile> tiles;

  friend bool operator==(const TileSet&, const TileSet&) = default;
};

std::string format_tiles(const TileSet& ts);
TileSet parse_tiles(std::string_view text);

/// A schedule file is self-describing: every line carries the tile geometry.
struct ScheduleFile {
  Schedule schedule;
  std::vector<CircuitTile> tiles;  // geometry from the file, tile id order
};

std::string format_schedule(const Schedule& s, const std::vector<CircuitTile>& tiles);
ScheduleFile parse_schedule(std::string_view text);

}  // namespace modpack
