#include "latinlab/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace latinlab {

namespace {

uint128 below128(Rng& rng, uint128 bound) {
  const uint128 rem = (static_cast<uint128>(0) - bound) % bound;  // 2^128 mod bound
  for (;;) {
    const uint128 v = (static_cast<uint128>(rng.next()) << 64) | rng.next();
    if (rem == 0 || v < static_cast<uint128>(0) - rem) return v % bound;
  }
}

}  // namespace

JmState JmState::initial(int n) {
  if (n < 1) throw Error(Errc::InvalidParams, "order must be >= 1", n);
  std::vector<std::int32_t> cells(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) cells[static_cast<std::size_t>(r) * n + c] = (r + c) % n;
  return from_square(LatinSquare::unchecked(n, std::move(cells)));
}

JmState JmState::from_square(const LatinSquare& square) {
  JmState st;
  st.n_ = square.order();
  st.cube_.assign(static_cast<std::size_t>(st.n_) * st.n_ * st.n_, 0);
  for (int r = 0; r < st.n_; ++r)
    for (int c = 0; c < st.n_; ++c) st.cube_[st.index(r, c, square.at(r, c))] = 1;
  return st;
}

LatinSquare JmState::to_square() const {
  if (improper_) throw Error(Errc::InvalidParams, "improper state has no square form");
  std::vector<std::int32_t> cells(static_cast<std::size_t>(n_) * n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      for (int s = 0; s < n_; ++s)
        if (cube_[index(r, c, s)] == 1) {
          cells[static_cast<std::size_t>(r) * n_ + c] = s;
          break;
        }
    }
  return LatinSquare::unchecked(n_, std::move(cells));
}

void JmState::flip(int r, int c, int s, int r2, int c2, int s2) {
  cube_[index(r, c, s)] += 1;
  cube_[index(r, c2, s2)] += 1;
  cube_[index(r2, c, s2)] += 1;
  cube_[index(r2, c2, s)] += 1;
  cube_[index(r, c, s2)] -= 1;
  cube_[index(r, c2, s)] -= 1;
  cube_[index(r2, c, s)] -= 1;
  cube_[index(r2, c2, s2)] -= 1;
  improper_ = cube_[index(r2, c2, s2)] == -1;
  if (improper_) neg_ = {r2, c2, s2};
}

void JmState::apply_proper_move(int r, int c, int s) {
  if (improper_ || cube_[index(r, c, s)] != 0)
    throw Error(Errc::InvalidParams, "proper move needs a zero cell of a proper state");
  int s2 = -1, c2 = -1, r2 = -1;
  for (int i = 0; i < n_; ++i) {
    if (cube_[index(r, c, i)] == 1) s2 = i;
    if (cube_[index(r, i, s)] == 1) c2 = i;
    if (cube_[index(i, c, s)] == 1) r2 = i;
  }
  flip(r, c, s, r2, c2, s2);
}

void JmState::apply_improper_move(bool second_row, bool second_col, bool second_sym) {
  if (!improper_) throw Error(Errc::InvalidParams, "improper move needs an improper state");
  const int a = neg_.row, b = neg_.col, g = neg_.sym;
  int rows[2], cols[2], syms[2];
  int nr = 0, nc = 0, ns = 0;
  for (int i = 0; i < n_; ++i) {
    if (cube_[index(i, b, g)] == 1) rows[std::min(nr++, 1)] = i;
    if (cube_[index(a, i, g)] == 1) cols[std::min(nc++, 1)] = i;
    if (cube_[index(a, b, i)] == 1) syms[std::min(ns++, 1)] = i;
  }
  const int r2 = rows[second_row ? 1 : 0];
  const int c2 = cols[second_col ? 1 : 0];
  const int s2 = syms[second_sym ? 1 : 0];
  improper_ = false;
  flip(a, b, g, r2, c2, s2);
}

void JmState::step(Rng& rng) {
  if (n_ == 1) return;
  if (!improper_) {
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_)));
    int cur = 0;
    for (int s = 0; s < n_; ++s)
      if (cube_[index(r, c, s)] == 1) {
        cur = s;
        break;
      }
    int z = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_ - 1)));
    if (z >= cur) ++z;
    apply_proper_move(r, c, z);
  } else {
    const bool sr = rng.coin();
    const bool sc = rng.coin();
    const bool ss = rng.coin();
    apply_improper_move(sr, sc, ss);
  }
}

bool JmState::check_invariants() const {
  int negatives = 0;
  Triple neg{};
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      for (int s = 0; s < n_; ++s) {
        const std::int8_t v = cube_[index(r, c, s)];
        if (v < -1 || v > 1) return false;
        if (v == -1) {
          ++negatives;
          neg = {r, c, s};
        }
      }
  if (negatives > 1) return false;
  if ((negatives == 1) != improper_) return false;
  if (improper_ && !(neg == neg_)) return false;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      int sum = 0;
      for (int s = 0; s < n_; ++s) sum += cube_[index(r, c, s)];
      if (sum != 1) return false;
    }
  for (int r = 0; r < n_; ++r)
    for (int s = 0; s < n_; ++s) {
      int sum = 0;
      for (int c = 0; c < n_; ++c) sum += cube_[index(r, c, s)];
      if (sum != 1) return false;
    }
  for (int c = 0; c < n_; ++c)
    for (int s = 0; s < n_; ++s) {
      int sum = 0;
      for (int r = 0; r < n_; ++r) sum += cube_[index(r, c, s)];
      if (sum != 1) return false;
    }
  return true;
}

void jm_step(JmState& state, Rng& rng) { state.step(rng); }

JmSampler::JmSampler(int n, std::int64_t burnin, std::int64_t thin, Rng rng)
    : state_(JmState::initial(n)), thin_(std::max<std::int64_t>(thin, 1)), rng_(rng) {
  for (std::int64_t i = 0; i < burnin; ++i) state_.step(rng_);
}

LatinSquare JmSampler::next() {
  if (state_.order() == 1) return state_.to_square();
  std::int64_t visits = 0;
  for (;;) {
    state_.step(rng_);
    if (state_.proper() && ++visits >= thin_) return state_.to_square();
  }
}

std::vector<LatinSquare> jm_sample(int n, std::int64_t burnin, std::int64_t thin, std::int64_t count,
                                   Rng rng) {
  JmSampler sampler(n, burnin, thin, rng);
  std::vector<LatinSquare> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

namespace {

// Row-major backtracking over cells; symbols tried in ascending order, so
// outputs appear in lexicographic order.
struct GridSearch {
  int k, n;
  std::vector<std::int32_t> cells;
  std::vector<std::uint64_t> row_used, col_used;
  const std::function<void(const std::vector<std::int32_t>&)>* emit;

  void run() {
    row_used.assign(static_cast<std::size_t>(k), 0);
    col_used.assign(static_cast<std::size_t>(n), 0);
    cells.assign(static_cast<std::size_t>(k) * n, 0);
    descend(0);
  }

  void descend(int cell) {
    if (cell == k * n) {
      (*emit)(cells);
      return;
    }
    const int r = cell / n;
    const int c = cell % n;
    std::uint64_t free_syms = ~(row_used[r] | col_used[c]) & ((n == 64 ? ~0ULL : (1ULL << n) - 1));
    while (free_syms) {
      const int s = __builtin_ctzll(free_syms);
      free_syms &= free_syms - 1;
      const std::uint64_t bit = 1ULL << s;
      row_used[r] |= bit;
      col_used[c] |= bit;
      cells[static_cast<std::size_t>(cell)] = s;
      descend(cell + 1);
      row_used[r] &= ~bit;
      col_used[c] &= ~bit;
    }
  }
};

void guard_square_enumeration(int n) {
  if (n < 1 || n > 5) throw Error(Errc::SizeGuard, "square enumeration guarded to n <= 5", n);
}

void guard_rectangle_enumeration(int k, int n) {
  if (k < 1 || k > n) throw Error(Errc::InvalidParams, "need 1 <= k <= n", k, n);
  if (n > 7 || (k * n > 16 && k > 2))
    throw Error(Errc::SizeGuard, "rectangle enumeration guarded to n <= 7 and (k*n <= 16 or k <= 2)", k, n);
}

}  // namespace

void for_each_square(int n, const std::function<void(const LatinSquare&)>& fn) {
  guard_square_enumeration(n);
  std::function<void(const std::vector<std::int32_t>&)> emit = [&](const std::vector<std::int32_t>& cells) {
    fn(LatinSquare::unchecked(n, cells));
  };
  GridSearch search{n, n, {}, {}, {}, &emit};
  search.run();
}

std::vector<LatinSquare> enumerate_squares(int n) {
  std::vector<LatinSquare> out;
  for_each_square(n, [&](const LatinSquare& s) { out.push_back(s); });
  return out;
}

void for_each_rectangle(int k, int n, const std::function<void(const LatinRectangle&)>& fn) {
  guard_rectangle_enumeration(k, n);
  std::function<void(const std::vector<std::int32_t>&)> emit = [&](const std::vector<std::int32_t>& cells) {
    fn(LatinRectangle::unchecked(k, n, cells));
  };
  GridSearch search{k, n, {}, {}, {}, &emit};
  search.run();
}

std::vector<LatinRectangle> enumerate_rectangles(int k, int n) {
  std::vector<LatinRectangle> out;
  for_each_rectangle(k, n, [&](const LatinRectangle& r) { out.push_back(r); });
  return out;
}

namespace {

// Uniformly random perfect matching of the availability graph, by
// permanent-weighted sequential symbol choice.
std::vector<std::int32_t> weighted_row(const std::vector<std::uint64_t>& avail, int n, Rng& rng) {
  std::vector<std::int32_t> row(static_cast<std::size_t>(n));
  const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::uint64_t used = 0;
  for (int c = 0; c < n; ++c) {
    // permanents of the residual matrix for every candidate symbol
    std::vector<std::uint64_t> rest(avail.begin() + c + 1, avail.end());
    std::uint64_t candidates = avail[c] & ~used;
    std::vector<std::pair<int, uint128>> weights;
    uint128 total = 0;
    while (candidates) {
      const int s = __builtin_ctzll(candidates);
      candidates &= candidates - 1;
      const std::uint64_t remaining = full & ~(used | (1ULL << s));
      // compact the remaining symbols onto columns 0..n-c-2 for Ryser
      std::vector<std::uint64_t> masks;
      masks.reserve(rest.size());
      for (std::uint64_t m : rest) {
        std::uint64_t compact = 0;
        int bit = 0;
        for (std::uint64_t t = remaining; t; t &= t - 1, ++bit)
          if (m & (t & (0 - t))) compact |= 1ULL << bit;
        masks.push_back(compact);
      }
      const uint128 w = permanent_ryser(masks, static_cast<int>(masks.size()));
      if (w == 0) continue;
      weights.emplace_back(s, w);
      total += w;
    }
    if (total == 0) throw Error(Errc::CompletionFailed, "availability graph has no perfect matching", c);
    uint128 x = below128(rng, total);
    int chosen = weights.front().first;
    for (const auto& [s, w] : weights) {
      if (x < w) {
        chosen = s;
        break;
      }
      x -= w;
    }
    row[c] = chosen;
    used |= 1ULL << chosen;
  }
  return row;
}

std::vector<std::int32_t> greedy_row(const std::vector<std::uint64_t>& avail, int n, Rng& rng,
                                     int max_restarts) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int32_t> row(static_cast<std::size_t>(n));
  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    // random column order
    for (int i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i + 1))]);
    std::uint64_t used = 0;
    bool ok = true;
    for (int idx = 0; idx < n && ok; ++idx) {
      const int c = order[idx];
      const std::uint64_t candidates = avail[c] & ~used;
      if (!candidates) {
        ok = false;
        break;
      }
      const int count = __builtin_popcountll(candidates);
      int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(count)));
      std::uint64_t bits = candidates;
      while (pick--) bits &= bits - 1;
      const int s = __builtin_ctzll(bits);
      row[c] = s;
      used |= 1ULL << s;
    }
    if (ok) return row;
  }
  throw Error(Errc::CompletionFailed, "greedy row sampling exhausted restarts", max_restarts);
}

}  // namespace

LatinSquare random_completion(const LatinRectangle& rect, Rng& rng, CompletionMode mode,
                              int max_restarts) {
  const int n = rect.order();
  if (n > 64) throw Error(Errc::SizeGuard, "completion supports n <= 64", n);
  CompletionMode effective = mode;
  if (effective == CompletionMode::Auto)
    effective = n <= 30 ? CompletionMode::PermanentWeighted : CompletionMode::Greedy;
  std::vector<std::int32_t> cells = rect.cells();
  cells.resize(static_cast<std::size_t>(n) * n);
  const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::vector<std::uint64_t> avail(static_cast<std::size_t>(n), full);
  for (int r = 0; r < rect.rows_count(); ++r)
    for (int c = 0; c < n; ++c) avail[c] &= ~(1ULL << rect.at(r, c));

  for (int r = rect.rows_count(); r < n; ++r) {
    const std::vector<std::int32_t> row = effective == CompletionMode::PermanentWeighted
                                              ? weighted_row(avail, n, rng)
                                              : greedy_row(avail, n, rng, max_restarts);
    for (int c = 0; c < n; ++c) {
      cells[static_cast<std::size_t>(r) * n + c] = row[c];
      avail[c] &= ~(1ULL << row[c]);
    }
  }
  return LatinSquare::unchecked(n, std::move(cells));
}

LatinRectangle sample_rectangle(int k, int n, RectangleMode mode, Rng& rng) {
  if (mode == RectangleMode::ExactTiny) {
    guard_rectangle_enumeration(k, n);
    const std::vector<LatinRectangle> all = enumerate_rectangles(k, n);
    return all[rng.below(all.size())];
  }
  JmSampler sampler(n, JmSampler::default_burnin(n), JmSampler::default_thin(n), rng);
  return LatinRectangle::from_square(sampler.next(), k);
}

}  // namespace latinlab
