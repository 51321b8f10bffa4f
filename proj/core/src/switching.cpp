#include "latinlab/switching.hpp"

#include <algorithm>

namespace latinlab {

namespace {

// column bitmasks of symbols present (n <= 64)
std::vector<std::uint64_t> column_masks(const LatinRectangle& rect) {
  const int n = rect.order();
  if (n > 64) throw Error(Errc::SizeGuard, "switchings support n <= 64", n);
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < rect.rows_count(); ++r)
    for (int c = 0; c < n; ++c) mask[c] |= 1ULL << rect.at(r, c);
  return mask;
}

bool switching_valid(const std::vector<std::uint64_t>& col_mask, const LatinRectangle& rect,
                     int i, int x, int y) {
  const std::int32_t a = rect.at(i, x);
  const std::int32_t b = rect.at(i, y);
  // after the swap column x holds b and column y holds a
  return !((col_mask[x] >> b) & 1) && !((col_mask[y] >> a) & 1);
}

// Intercalate witnesses between rows 0 and i, as column pairs (c1 < c2).
std::vector<std::pair<std::int32_t, std::int32_t>> pair_witnesses(std::span<const std::int32_t> row0,
                                                                  std::span<const std::int32_t> rowi) {
  const int n = static_cast<int>(row0.size());
  std::vector<std::int32_t> pos0(static_cast<std::size_t>(n));
  for (std::int32_t c = 0; c < n; ++c) pos0[row0[c]] = c;
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  for (std::int32_t a = 0; a < n; ++a) {
    const std::int32_t b = rowi[pos0[a]];
    if (b <= a) continue;
    if (rowi[pos0[b]] != a) continue;
    std::int32_t c1 = pos0[a];
    std::int32_t c2 = pos0[b];
    if (c1 > c2) std::swap(c1, c2);
    out.emplace_back(c1, c2);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int start_row(const LatinRectangle& rect, std::optional<int> min_row) {
  if (rect.rows_count() < 2) throw Error(Errc::KTooSmall, "switchings need k >= 2", rect.rows_count());
  int lo = min_row.value_or(1);
  if (lo < 1) lo = 1;  // the first row is never switched
  return lo;
}

}  // namespace

std::vector<SwitchingRecord> enumerate_switchings(const LatinRectangle& rect, std::optional<int> min_row) {
  const int lo = start_row(rect, min_row);
  const int n = rect.order();
  const std::vector<std::uint64_t> col_mask = column_masks(rect);
  std::vector<SwitchingRecord> out;
  for (int i = lo; i < rect.rows_count(); ++i)
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        out.push_back({{i, x, y}, switching_valid(col_mask, rect, i, x, y), 0, 0, 0});
  return out;
}

LatinRectangle apply_switching(const LatinRectangle& rect, const Switching& sw) {
  if (sw.row < 1 || sw.row >= rect.rows_count() || sw.x < 0 || sw.y <= sw.x || sw.y >= rect.order())
    throw Error(Errc::InvalidSwitching, "switching coordinates out of range", sw.row, sw.x);
  const std::vector<std::uint64_t> col_mask = column_masks(rect);
  if (!switching_valid(col_mask, rect, sw.row, sw.x, sw.y))
    throw Error(Errc::InvalidSwitching, "swap would repeat a symbol in a column", sw.row, sw.x);
  std::vector<std::int32_t> cells = rect.cells();
  std::swap(cells[static_cast<std::size_t>(sw.row) * rect.order() + sw.x],
            cells[static_cast<std::size_t>(sw.row) * rect.order() + sw.y]);
  return LatinRectangle::unchecked(rect.rows_count(), rect.order(), std::move(cells));
}

std::int64_t first_row_intercalate_count(const LatinRectangle& rect) {
  std::int64_t total = 0;
  for (int i = 1; i < rect.rows_count(); ++i)
    total += static_cast<std::int64_t>(pair_witnesses(rect.row(0), rect.row(i)).size());
  return total;
}

std::vector<Intercalate> first_row_intercalates(const LatinRectangle& rect) {
  std::vector<Intercalate> out;
  for (const Intercalate& ic : enumerate_intercalates(rect))
    if (ic.r1 == 0) out.push_back(ic);
  return out;
}

SwitchingReport switching_effect_report(const LatinRectangle& rect, std::optional<int> min_row) {
  SwitchingReport report;
  report.records = enumerate_switchings(rect, min_row);
  report.first_row_count = first_row_intercalate_count(rect);
  const int n = rect.order();

  int current_row = -1;
  std::vector<std::pair<std::int32_t, std::int32_t>> before;
  std::vector<std::int32_t> row_buffer(static_cast<std::size_t>(n));
  for (SwitchingRecord& rec : report.records) {
    if (!rec.valid) continue;
    ++report.valid_switchings;
    const int i = rec.sw.row;
    if (i != current_row) {
      current_row = i;
      before = pair_witnesses(rect.row(0), rect.row(i));
    }
    std::copy(rect.row(i).begin(), rect.row(i).end(), row_buffer.begin());
    std::swap(row_buffer[rec.sw.x], row_buffer[rec.sw.y]);
    const std::vector<std::pair<std::int32_t, std::int32_t>> after =
        pair_witnesses(rect.row(0), row_buffer);
    std::int32_t created = 0, destroyed = 0;
    for (const auto& w : after)
      if (!std::binary_search(before.begin(), before.end(), w)) ++created;
    for (const auto& w : before)
      if (!std::binary_search(after.begin(), after.end(), w)) ++destroyed;
    rec.creates = created;
    rec.destroys = destroyed;
    rec.delta = created - destroyed;
    if (created > 0) ++report.creating_switchings;
    if (destroyed > 0) ++report.destroying_switchings;
  }
  return report;
}

std::vector<std::int64_t> destroying_switching_counts(const LatinRectangle& rect) {
  const std::vector<Intercalate> targets = first_row_intercalates(rect);
  std::vector<std::int64_t> counts(targets.size(), 0);
  const std::vector<std::uint64_t> col_mask = column_masks(rect);
  const int n = rect.order();
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const Intercalate& ic = targets[t];
    const int j = ic.r2;  // the non-first row carrying the intercalate
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        if (x != ic.c1 && x != ic.c2 && y != ic.c1 && y != ic.c2) continue;
        if (!switching_valid(col_mask, rect, j, x, y)) continue;
        // any valid swap in row j touching a column of the intercalate
        // changes one of its cells, which destroys it
        ++counts[t];
      }
  }
  return counts;
}

std::string switching_report_csv(const SwitchingReport& report) {
  std::string csv = "i,x,y,valid,delta,creates,destroys\n";
  for (const SwitchingRecord& rec : report.records) {
    csv += std::to_string(rec.sw.row + 1);
    csv += ',';
    csv += std::to_string(rec.sw.x + 1);
    csv += ',';
    csv += std::to_string(rec.sw.y + 1);
    csv += ',';
    csv += rec.valid ? '1' : '0';
    if (rec.valid) {
      csv += ',';
      csv += std::to_string(rec.delta);
      csv += ',';
      csv += std::to_string(rec.creates);
      csv += ',';
      csv += std::to_string(rec.destroys);
    } else {
      csv += ",,,";
    }
    csv += '\n';
  }
  return csv;
}

}  // namespace latinlab
