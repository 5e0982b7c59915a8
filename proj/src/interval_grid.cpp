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

#include "modpack/interval_grid.hpp"

#include <algorithm>
#include <iterator>

namespace modpack {

int RowIntervals::first_conflict_end(int begin, int end) const {
  if (begin >= end) return begin;
  // The only candidates are the interval starting at or before `begin` and
  // the first one starting after it.
  auto it = spans_.upper_bound(begin);
  if (it != spans_.begin()) {
    auto prev = std::prev(it);
    if (prev->second > begin) return prev->second;
  }
  if (it != spans_.end() && it->first < end) return it->second;
  return begin;
}

bool RowIntervals::is_free(int begin, int end) const {
  return first_conflict_end(begin, end) == begin;
}

void RowIntervals::occupy(int begin, int end) {
  if (begin >= end) return;
  // Absorb every interval that overlaps or touches [begin, end).
  auto it = spans_.upper_bound(begin);
  if (it != spans_.begin()) {
    auto prev = std::prev(it);
    if (prev->second >= begin) {
      begin = prev->first;
      end = std::max(end, prev->second);
      it = spans_.erase(prev);
    }
  }
  while (it != spans_.end() && it->first <= end) {
    end = std::max(end, it->second);
    it = spans_.erase(it);
  }
  spans_.emplace(begin, end);
}

int RowIntervals::extent() const {
  return spans_.empty() ? 0 : std::prev(spans_.end())->second;
}

int OccupancyGrid::first_fit(int lo, int hi, int length, int from) const {
  int x = from;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int r = lo; r <= hi; ++r) {
      const int next = row(r).first_conflict_end(x, x + length);
      if (next != x) {
        x = next;
        moved = true;
      }
    }
  }
  return x;
}

bool OccupancyGrid::is_free(int lo, int hi, int begin, int end) const {
  for (int r = lo; r <= hi; ++r) {
    if (!row(r).is_free(begin, end)) return false;
  }
  return true;
}

void OccupancyGrid::occupy(int lo, int hi, int begin, int end) {
  for (int r = lo; r <= hi; ++r) rows_.at(static_cast<std::size_t>(r)).occupy(begin, end);
}

}  // namespace modpack
