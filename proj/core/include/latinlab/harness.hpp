#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "latinlab/intercalates.hpp"
#include "latinlab/rng.hpp"
#include "latinlab/square.hpp"

namespace latinlab {

/// Parameters of the bounded-differences concentration bound
/// exp(-t^2 / (4 K^2 N p + 2 K t)) for a K-Lipschitz function of N
/// independent Bernoulli(p) coordinates.
struct FreedmanParams {
  double lipschitz_k = 1.0;
  std::int64_t coordinates = 1;
  double p = 0.5;
  double t = 0.0;
};

/// The bound value in (0, 1]; t = 0 gives exactly 1. Invalid parameters
/// (K <= 0, N < 1, p outside [0,1], t < 0) throw Errc::InvalidParams.
double freedman_bound(const FreedmanParams& params);

enum class SamplerKind { Jm, Exhaustive };
enum class Statistic { Intercalates, Order3Subsquares };
enum class TailDirection { Lower, Upper };

struct Wilson {
  double frequency = 0;
  double lo = 0;
  double hi = 0;
};

/// 95% Wilson score interval for `hits` successes in `samples` trials.
Wilson wilson_interval(std::int64_t hits, std::int64_t samples);

/// Seeded Monte Carlo distribution of a per-square statistic. Exhaustive mode
/// enumerates every square (within the enumeration guards) and reports the
/// exact distribution; JM mode runs `replicas` independent chains on streams
/// of the master seed with a fixed per-replica sample split, so results are
/// bit-exact for a given config regardless of execution order. Negative
/// burnin/thin select the defaults n^3 and n^2.
struct DistributionConfig {
  int n = 4;
  SamplerKind sampler = SamplerKind::Jm;
  Statistic statistic = Statistic::Intercalates;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  std::int64_t burnin = -1;
  std::int64_t thin = -1;
  int replicas = 8;
};

struct DistributionReport {
  DistributionConfig config;
  std::int64_t samples_used = 0;  // number of squares in exhaustive mode
  std::vector<std::pair<std::int64_t, std::int64_t>> histogram;  // value -> count
  double mean = 0;
  double variance = 0;
  double std_error = 0;
  double wall_ms = 0;  // excluded from reproducibility comparisons
};

DistributionReport mc_distribution(const DistributionConfig& config);

struct TailConfig {
  int n = 4;
  SamplerKind sampler = SamplerKind::Jm;
  TailDirection direction = TailDirection::Lower;
  double delta = 0.5;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  std::int64_t burnin = -1;
  std::int64_t thin = -1;
  int replicas = 8;
};

struct TailReport {
  TailConfig config;
  double threshold = 0;  // (1 -+ delta) n^2/4
  std::int64_t samples_used = 0;
  std::int64_t hits = 0;
  Wilson wilson;
  double wall_ms = 0;
};

/// Empirical frequency of N <= (1-delta) n^2/4 (lower) or N >= (1+delta)
/// n^2/4 (upper), with a Wilson interval. Exhaustive mode gives the exact
/// fraction.
TailReport tail_estimate(const TailConfig& config);

struct GstarConfig {
  int n = 60;
  double alpha = 0.3;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
  int replicas = 8;
};

/// Monte Carlo check of the pruned binomial model: per draw, G is the
/// binomial 3-partite hypergraph with edge probability alpha/n, G* its
/// conflict-free pruning. Reports MC means with standard errors and z-scores
/// against the exact expectations of N(G*) and of the shared-edge pair count
/// N2(G), plus the greedy/exact maximum disjoint family N'(G*) and the
/// exact/asymptotic ratio for E N(G*).
struct GstarReport {
  GstarConfig config;
  double mc_n_mean = 0, mc_n_se = 0, exact_n = 0, z_n = 0;
  double mc_n2_mean = 0, mc_n2_se = 0, exact_n2 = 0, z_n2 = 0;
  double mc_nprime_mean = 0, mc_nprime_se = 0;
  double asymptotic_n = 0, exact_over_asymptotic = 0;
  std::int64_t bollobas_violations = 0;  // draws with N'(G*) < N(G*) - N2(G)
  double wall_ms = 0;
};

GstarReport gstar_experiment(const GstarConfig& config);

struct InheritanceConfig {
  std::int64_t m = 0;
  std::int64_t threshold = 0;
  std::int64_t samples = 1000;
  std::uint64_t seed = 0;
  int replicas = 8;
};

struct InheritanceReport {
  InheritanceConfig config;
  int n = 0;
  std::int64_t hits = 0;
  Wilson wilson;
  double wall_ms = 0;
};

/// Frequency, over uniformly random m-triple subsets of the square, of
/// having at most `threshold` intercalates. Requires m <= n^2
/// (Errc::MTooLarge).
InheritanceReport inheritance_estimate(const LatinSquare& square, const InheritanceConfig& config);

/// JSON exports ("schema":"latinlab/1") and a value,count CSV of a histogram.
std::string report_json(const DistributionReport& report);
std::string report_json(const TailReport& report);
std::string report_json(const GstarReport& report);
std::string report_json(const InheritanceReport& report);
std::string histogram_csv(const std::vector<std::pair<std::int64_t, std::int64_t>>& histogram);

}  // namespace latinlab
