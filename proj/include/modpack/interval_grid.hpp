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

#include <map>
#include <vector>

namespace modpack {

/// Union of half-open column intervals on one row, stored as disjoint
/// maximal spans.
class RowIntervals {
 public:
  bool is_free(int begin, int end) const;
  /// If [begin, end) overlaps an occupied interval, the end of the first such
  /// interval; otherwise begin.
  int first_conflict_end(int begin, int end) const;
  /// Adds [begin, end) to the union; overlap with existing spans is allowed.
  void occupy(int begin, int end);
  int extent() const;  // end of the last occupied interval, 0 when empty
  const std::map<int, int>& intervals() const { return spans_; }

 private:
  std::map<int, int> spans_;  // begin -> end
};

/// Row-by-column occupancy, unbounded to the right.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(int n_rows) : rows_(static_cast<std::size_t>(n_rows)) {}

  int n_rows() const { return static_cast<int>(rows_.size()); }
  /// Smallest x >= from with [x, x + length) free on every row of [lo, hi].
  int first_fit(int lo, int hi, int length, int from = 0) const;
  bool is_free(int lo, int hi, int begin, int end) const;
  void occupy(int lo, int hi, int begin, int end);
  const RowIntervals& row(int r) const { return rows_.at(static_cast<std::size_t>(r)); }

 private:
  std::vector<RowIntervals> rows_;
};

}  // namespace modpack
