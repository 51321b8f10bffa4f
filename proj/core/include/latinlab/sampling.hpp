#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latinlab/permanent.hpp"
#include "latinlab/rng.hpp"
#include "latinlab/square.hpp"
#include "latinlab/triples.hpp"

namespace latinlab {

/// State of the Jacobson-Matthews chain: an n x n x n incidence array with
/// entries in {0,1} and at most one entry equal to -1, such that every
/// axis-aligned line sums to exactly 1. Proper states (no -1) biject with
/// Latin squares.
class JmState {
 public:
  /// Starts from the cyclic-table square.
  static JmState initial(int n);
  static JmState from_square(const LatinSquare& square);

  int order() const { return n_; }
  bool proper() const { return !improper_; }
  /// Coordinates of the -1 cell; only meaningful when !proper().
  Triple improper_cell() const { return neg_; }
  std::int8_t at(int r, int c, int s) const { return cube_[index(r, c, s)]; }

  /// Requires a proper state (Errc::InvalidParams otherwise).
  LatinSquare to_square() const;

  /// One chain move. From a proper state: picks a uniformly random zero cell
  /// and flips its forced 2x2x2 pattern (possibly creating one -1 cell).
  /// From an improper state: resolves uniformly among the 8 admissible flips
  /// (independent row/column/symbol coins, in that order). n = 1 is a fixed
  /// point. Always yields a valid JmState.
  void step(Rng& rng);

  /// Deterministic move kernels behind step(), exposed so tests can walk the
  /// full transition graph. apply_proper_move requires at(r,c,s) == 0;
  /// apply_improper_move requires an improper state. The booleans select the
  /// second of the two admissible line-mates (ascending scan order).
  void apply_proper_move(int r, int c, int s);
  void apply_improper_move(bool second_row, bool second_col, bool second_sym);

  /// Full line-sum scan of the invariants (for tests and debug runs).
  bool check_invariants() const;

  bool operator==(const JmState& other) const {
    return n_ == other.n_ && improper_ == other.improper_ && cube_ == other.cube_ &&
           (!improper_ || neg_ == other.neg_);
  }

 private:
  JmState() = default;
  std::size_t index(int r, int c, int s) const {
    return (static_cast<std::size_t>(r) * n_ + c) * n_ + s;
  }
  void flip(int r, int c, int s, int r2, int c2, int s2);

  int n_ = 0;
  std::vector<std::int8_t> cube_;
  bool improper_ = false;
  Triple neg_{};
};

void jm_step(JmState& state, Rng& rng);

/// Streaming Jacobson-Matthews sampler: burn-in of `burnin` elementary moves,
/// then one snapshot per `thin` proper-state visits. Defaults are heuristic
/// (the chain's mixing time is unproven): burnin n^3 moves, thin n^2 visits.
class JmSampler {
 public:
  JmSampler(int n, std::int64_t burnin, std::int64_t thin, Rng rng);

  static std::int64_t default_burnin(int n) {
    return static_cast<std::int64_t>(n) * n * n;
  }
  static std::int64_t default_thin(int n) { return static_cast<std::int64_t>(n) * n; }

  LatinSquare next();

 private:
  JmState state_;
  std::int64_t thin_;
  Rng rng_;
};

/// `count` snapshots from one chain; identical seeds give identical streams.
std::vector<LatinSquare> jm_sample(int n, std::int64_t burnin, std::int64_t thin, std::int64_t count,
                                   Rng rng);

/// Exhaustive enumeration in lexicographic row-major order. Guards
/// (Errc::SizeGuard): squares n <= 5; rectangles n <= 7 and (k*n <= 16 or
/// k <= 2).
void for_each_square(int n, const std::function<void(const LatinSquare&)>& fn);
std::vector<LatinSquare> enumerate_squares(int n);
void for_each_rectangle(int k, int n, const std::function<void(const LatinRectangle&)>& fn);
std::vector<LatinRectangle> enumerate_rectangles(int k, int n);

enum class CompletionMode { Auto, PermanentWeighted, Greedy };

/// Completes a rectangle to a full Latin square, one row at a time. The
/// permanent-weighted mode draws each new row as a uniformly random perfect
/// matching of the availability bipartite graph (exact, n <= 30); the greedy
/// mode fills columns in random order with random available symbols and
/// restarts on dead ends (non-uniform; Errc::CompletionFailed after
/// max_restarts). Auto picks permanent-weighted iff n <= 30.
LatinSquare random_completion(const LatinRectangle& rect, Rng& rng,
                              CompletionMode mode = CompletionMode::Auto, int max_restarts = 1000);

enum class RectangleMode { ExactTiny, SquarePrefix };

/// ExactTiny draws uniformly from the enumerated rectangle list (within the
/// enumeration guards). SquarePrefix returns the first k rows of a
/// Jacobson-Matthews square sampled with default burn-in and thinning; that
/// distribution is only approximately the uniform-rectangle one.
LatinRectangle sample_rectangle(int k, int n, RectangleMode mode, Rng& rng);

}  // namespace latinlab
