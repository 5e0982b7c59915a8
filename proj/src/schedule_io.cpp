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

#include "modpack/schedule_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "modpack/util.hpp"

namespace modpack {

namespace {

const char* kind_name(TileKind k) { return k == TileKind::Inter ? "inter" : "intra"; }

// key=value fields after the leading tokens of a record.
std::map<std::string, std::string, std::less<>> fields(
    const std::vector<std::string_view>& tok, std::size_t first, std::size_t line) {
  std::map<std::string, std::string, std::less<>> out;
  for (std::size_t i = first; i < tok.size(); ++i) {
    auto eq = tok[i].find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line, "field '" + std::string(tok[i]) + "' is not key=value");
    }
    out.emplace(std::string(tok[i].substr(0, eq)), std::string(tok[i].substr(eq + 1)));
  }
  return out;
}

const std::string& need(const std::map<std::string, std::string, std::less<>>& f,
                        std::string_view key, std::size_t line) {
  auto it = f.find(key);
  if (it == f.end()) throw ParseError(line, "missing field '" + std::string(key) + "'");
  return it->second;
}

std::pair<int, int> parse_rows(std::string_view v, std::size_t line) {
  auto parts = split(v, '-');
  if (parts.size() != 2) throw ParseError(line, "rows must be <lo>-<hi>");
  return {static_cast<int>(parse_int(parts[0])), static_cast<int>(parse_int(parts[1]))};
}

// Rebuilds a tile from its serialized geometry and checks the derived fields.
CircuitTile tile_from_fields(int id, const std::map<std::string, std::string, std::less<>>& f,
                             std::size_t line) {
  auto [lo, hi] = parse_rows(need(f, "rows", line), line);
  const int width = static_cast<int>(parse_int(need(f, "width", line)));
  const int k = static_cast<int>(parse_int(need(f, "k", line)));
  const int term = f.count("term") ? static_cast<int>(parse_int(f.find("term")->second)) : -1;
  CircuitTile t = make_tile(id, lo, hi, width, k, term);
  const auto& kind = need(f, "kind", line);
  if (kind != "intra" && kind != "inter") throw ParseError(line, "kind must be intra|inter");
  if (kind != kind_name(t.kind)) throw ParseError(line, "kind disagrees with k");
  if (auto it = f.find("inter_gates");
      it != f.end() && parse_int(it->second) != t.inter_gate_count) {
    throw ParseError(line, "inter_gates must equal 2(k-1)");
  }
  return t;
}

}  // namespace

std::string format_tiles(const TileSet& ts) {
  std::ostringstream os;
  os << "layout rows=" << ts.layout.n_rows() << " seams=";
  for (std::size_t i = 0; i < ts.layout.seams().size(); ++i) {
    os << (i ? "," : "") << ts.layout.seams()[i];
  }
  os << '\n';
  for (const auto& t : ts.tiles) {
    os << "tile " << t.tile_id << " term=" << t.term_id << " rows=" << t.row_lo << '-'
       << t.row_hi << " width=" << t.width << " kind=" << kind_name(t.kind)
       << " k=" << t.modules_spanned << " inter_gates=" << t.inter_gate_count << '\n';
  }
  return os.str();
}

TileSet parse_tiles(std::string_view text) {
  TileSet ts;
  bool have_layout = false;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "layout") {
        if (have_layout) throw ParseError(line_no, "repeated layout record");
        auto f = fields(tok, 1, line_no);
        const int rows = static_cast<int>(parse_int(need(f, "rows", line_no)));
        std::vector<int> seams;
        const auto& sv = need(f, "seams", line_no);
        if (!sv.empty()) {
          for (auto s : split(sv, ',')) seams.push_back(static_cast<int>(parse_int(s)));
        }
        ts.layout = ModuleLayout(rows, std::move(seams));
        have_layout = true;
      } else if (tok[0] == "tile") {
        if (!have_layout) throw ParseError(line_no, "tile before layout record");
        if (tok.size() < 2) throw ParseError(line_no, "tile needs an id");
        const int id = static_cast<int>(parse_int(tok[1]));
        CircuitTile t = tile_from_fields(id, fields(tok, 2, line_no), line_no);
        if (t.row_hi >= ts.layout.n_rows()) throw ParseError(line_no, "tile rows exceed layout");
        if (t.modules_spanned != ts.layout.modules_spanned(t.row_lo, t.row_hi)) {
          throw ParseError(line_no, "k disagrees with the layout");
        }
        ts.tiles.push_back(t);
      } else {
        throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_layout) throw ParseError(0, "missing layout record");
  return ts;
}

std::string format_schedule(const Schedule& s, const std::vector<CircuitTile>& tiles) {
  std::map<int, const CircuitTile*> by_id;
  for (const auto& t : tiles) by_id[t.tile_id] = &t;
  std::ostringstream os;
  os << "makespan " << s.makespan << " tau " << format_double(s.tau) << " packer "
     << s.packer_name << '\n';
  for (const auto& p : s.placements) {
    const auto* t = by_id.at(p.tile_id);
    os << "tile " << p.tile_id << " x=" << p.x << " rows=" << p.row_lo << '-' << p.row_hi
       << " width=" << t->width << " kind=" << kind_name(t->kind)
       << " k=" << t->modules_spanned << '\n';
  }
  return os.str();
}

ScheduleFile parse_schedule(std::string_view text) {
  ScheduleFile out;
  bool have_header = false;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "makespan") {
        if (have_header) throw ParseError(line_no, "repeated header");
        if (tok.size() != 6 || tok[2] != "tau" || tok[4] != "packer") {
          throw ParseError(line_no, "expected 'makespan <n> tau <r> packer <name>'");
        }
        out.schedule.makespan = static_cast<int>(parse_int(tok[1]));
        out.schedule.tau = parse_double(tok[3]);
        out.schedule.packer_name = std::string(tok[5]);
        have_header = true;
      } else if (tok[0] == "tile") {
        if (!have_header) throw ParseError(line_no, "tile before header");
        if (tok.size() < 2) throw ParseError(line_no, "tile needs an id");
        const int id = static_cast<int>(parse_int(tok[1]));
        auto f = fields(tok, 2, line_no);
        CircuitTile t = tile_from_fields(id, f, line_no);
        const int x = static_cast<int>(parse_int(need(f, "x", line_no)));
        out.schedule.placements.push_back({id, x, t.row_lo, t.row_hi});
        out.tiles.push_back(t);
      } else {
        throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!have_header) throw ParseError(0, "missing schedule header");
  return out;
}

}  // namespace modpack
