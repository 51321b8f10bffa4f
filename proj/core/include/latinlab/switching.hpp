#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latinlab/intercalates.hpp"
#include "latinlab/square.hpp"

namespace latinlab {

/// A row switching on a Latin rectangle: swap the entries in columns x < y of
/// row i (never the first row). The swapped array may fail to be a Latin
/// rectangle; `valid` records whether it still is.
struct Switching {
  std::int32_t row = 0;
  std::int32_t x = 0;
  std::int32_t y = 0;

  auto operator<=>(const Switching&) const = default;
};

struct SwitchingRecord {
  Switching sw;
  bool valid = false;
  // effect on the first-row intercalate count (valid switchings only)
  std::int32_t delta = 0;
  std::int32_t creates = 0;
  std::int32_t destroys = 0;
};

/// All switchings (i, x, y) with row i >= max(1, min_row) and x < y, each
/// flagged valid iff the swapped array is still a Latin rectangle. Requires
/// k >= 2 (Errc::KTooSmall). Without a row restriction the list has
/// (k-1)*C(n,2) entries.
std::vector<SwitchingRecord> enumerate_switchings(const LatinRectangle& rect,
                                                  std::optional<int> min_row = std::nullopt);

/// Applies a valid switching (Errc::InvalidSwitching otherwise). Involution:
/// applying the same switching twice restores the rectangle.
LatinRectangle apply_switching(const LatinRectangle& rect, const Switching& sw);

/// Number of intercalates whose first row is row 0.
std::int64_t first_row_intercalate_count(const LatinRectangle& rect);

/// All intercalates involving row 0, in lexicographic order.
std::vector<Intercalate> first_row_intercalates(const LatinRectangle& rect);

struct SwitchingReport {
  std::vector<SwitchingRecord> records;
  std::int64_t first_row_count = 0;   // ell of the input rectangle
  std::int64_t valid_switchings = 0;
  std::int64_t creating_switchings = 0;  // valid switchings with creates >= 1
  std::int64_t destroying_switchings = 0;
};

/// Per-switching effect on the first-row intercalate count: for every
/// enumerated switching, whether it is valid and how many first-row
/// intercalates it creates and destroys. Only the row pair (0, i) can change,
/// so each record costs O(n).
SwitchingReport switching_effect_report(const LatinRectangle& rect,
                                        std::optional<int> min_row = std::nullopt);

/// For each first-row intercalate (in first_row_intercalates order), the
/// number of valid switchings that destroy it.
std::vector<std::int64_t> destroying_switching_counts(const LatinRectangle& rect);

/// CSV export of a report: header "i,x,y,valid,delta,creates,destroys" with
/// 1-based row/column indices; effect fields are empty for invalid rows.
std::string switching_report_csv(const SwitchingReport& report);

}  // namespace latinlab
