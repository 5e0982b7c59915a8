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

#include "modpack/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "modpack/util.hpp"

namespace modpack {

namespace {

constexpr int kCellPx = 8;
constexpr int kRowPx = 16;
constexpr int kLabelPx = 40;

struct Box {
  int x = 0;
  int width = 0;
  int mask = 0;
  const CircuitTile* tile = nullptr;
};

std::vector<Box> boxes(const Schedule& s, const TileSet& ts, const RenderSpec& spec) {
  if (spec.column_scale < 1) throw std::invalid_argument("column scale must be >= 1");
  std::map<int, const CircuitTile*> by_id;
  for (const auto& t : ts.tiles) by_id[t.tile_id] = &t;
  std::vector<Box> out;
  for (const auto& p : s.placements) {
    auto it = by_id.find(p.tile_id);
    if (it == by_id.end()) {
      throw std::invalid_argument("schedule places unknown tile " + std::to_string(p.tile_id));
    }
    const CircuitTile* t = it->second;
    if (t->row_hi >= ts.layout.n_rows()) {
      throw std::invalid_argument("tile " + std::to_string(t->tile_id) + " outside the layout");
    }
    const int mask = t->is_inter() ? mask_extension(*t, s.tau, spec.mask_basis) : 0;
    out.push_back({p.x, t->width, mask, t});
  }
  return out;
}

int row_label_width(int n_rows) { return static_cast<int>(std::to_string(n_rows - 1).size()) + 1; }

}  // namespace

std::string render_ascii(const Schedule& s, const TileSet& ts, const RenderSpec& spec) {
  const auto bs = boxes(s, ts, spec);
  int end = s.makespan;
  for (const auto& b : bs) end = std::max(end, b.x + b.width + (spec.show_masks ? b.mask : 0));
  const int scale = spec.column_scale;
  const int cells = (end + scale - 1) / scale;
  const int n_rows = ts.layout.n_rows();

  // 0 idle, 1 mask, 2 intra, 3 inter; later layers win.
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(n_rows),
                                     std::vector<int>(static_cast<std::size_t>(cells), 0));
  auto paint = [&](int lo, int hi, int begin, int stop, int v) {
    for (int r = lo; r <= hi; ++r) {
      for (int c = begin / scale; c * scale < stop; ++c) {
        auto& cell = grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        cell = std::max(cell, v);
      }
    }
  };
  if (spec.show_masks) {
    for (const auto& b : bs) {
      if (b.mask > 0) paint(b.tile->row_lo, b.tile->row_hi, b.x + b.width, b.x + b.width + b.mask, 1);
    }
  }
  for (const auto& b : bs) {
    if (b.width > 0) paint(b.tile->row_lo, b.tile->row_hi, b.x, b.x + b.width, b.tile->is_inter() ? 3 : 2);
  }

  const int lw = row_label_width(n_rows);
  std::ostringstream os;
  os << "makespan " << s.makespan << " tau " << format_double(s.tau) << " packer "
     << s.packer_name << " scale " << scale << '\n';
  const auto& seams = ts.layout.seams();
  for (int r = 0; r < n_rows; ++r) {
    std::string label = "r" + std::to_string(r);
    label.resize(static_cast<std::size_t>(lw + 1), ' ');
    os << label << '|';
    for (int v : grid[static_cast<std::size_t>(r)]) os << ".~#@"[v];
    os << "|\n";
    if (std::find(seams.begin(), seams.end(), r + 1) != seams.end()) {
      os << std::string(static_cast<std::size_t>(lw + 1), '-') << '+'
         << std::string(static_cast<std::size_t>(cells), '-') << "+\n";
    }
  }
  return os.str();
}

std::string render_svg(const Schedule& s, const TileSet& ts, const RenderSpec& spec) {
  const auto bs = boxes(s, ts, spec);
  int end = s.makespan;
  for (const auto& b : bs) end = std::max(end, b.x + b.width + (spec.show_masks ? b.mask : 0));
  const double px = static_cast<double>(kCellPx) / spec.column_scale;
  const int n_rows = ts.layout.n_rows();
  const double width = kLabelPx + end * px + kCellPx;
  const int height = n_rows * kRowPx + kRowPx;
  auto f = [](double v) { return format_double(v); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(width) << "\" height=\""
     << height << "\" viewBox=\"0 0 " << f(width) << ' ' << height << "\">\n";
  os << "<text x=\"2\" y=\"11\" font-family=\"monospace\" font-size=\"10\">makespan "
     << s.makespan << " tau " << f(s.tau) << " packer " << s.packer_name << "</text>\n";
  for (int r = 0; r < n_rows; ++r) {
    os << "<text x=\"2\" y=\"" << (r + 1) * kRowPx + 11
       << "\" font-family=\"monospace\" font-size=\"10\">r" << r << "</text>\n";
  }
  auto rect = [&](double x, int lo, int hi, double w, const std::string& fill, bool outline) {
    os << "<rect x=\"" << f(kLabelPx + x * px) << "\" y=\"" << (lo + 1) * kRowPx
       << "\" width=\"" << f(w * px) << "\" height=\"" << (hi - lo + 1) * kRowPx
       << "\" fill=\"" << fill << '"';
    if (outline) os << " stroke=\"#000000\" stroke-width=\"0.5\"";
    os << "/>\n";
  };
  if (spec.show_masks) {
    for (const auto& b : bs) {
      if (b.mask > 0) rect(b.x + b.width, b.tile->row_lo, b.tile->row_hi, b.mask, spec.mask_color, false);
    }
  }
  for (const auto& b : bs) {
    rect(b.x, b.tile->row_lo, b.tile->row_hi, b.width,
         b.tile->is_inter() ? spec.inter_color : spec.intra_color, true);
  }
  for (int seam : ts.layout.seams()) {
    const int y = (seam + 1) * kRowPx;
    os << "<line x1=\"" << kLabelPx << "\" y1=\"" << y << "\" x2=\"" << f(width) << "\" y2=\""
       << y << "\" stroke=\"#000000\" stroke-dasharray=\"4 2\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render(const Schedule& s, const TileSet& tiles, const RenderSpec& spec) {
  return spec.format == RenderFormat::Svg ? render_svg(s, tiles, spec)
                                          : render_ascii(s, tiles, spec);
}

}  // namespace modpack
