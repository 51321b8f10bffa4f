#include "latinlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "latinlab/parallel.hpp"
#include "latinlab/sampling.hpp"
#include "latinlab/trp.hpp"

namespace latinlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::int64_t> replica_split(std::int64_t samples, int replicas) {
  std::vector<std::int64_t> share(static_cast<std::size_t>(replicas), samples / replicas);
  for (int i = 0; i < samples % replicas; ++i) ++share[i];
  return share;
}

struct Moments {
  std::int64_t count = 0;
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;

  void add(std::int64_t v, std::int64_t times = 1) {
    count += times;
    sum += v * times;
    sum_sq += v * v * times;
  }
  void merge(const Moments& other) {
    count += other.count;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const { return count ? static_cast<double>(sum) / count : 0.0; }
  double variance() const {
    if (count < 2) return 0.0;
    const double mu = mean();
    return (static_cast<double>(sum_sq) - mu * sum) / (count - 1);
  }
  double std_error() const { return count ? std::sqrt(variance() / count) : 0.0; }
};

std::int64_t square_statistic(const LatinSquare& square, Statistic stat) {
  return stat == Statistic::Intercalates ? count_intercalates(square) : count_order3_subsquares(square);
}

std::vector<std::pair<std::int64_t, std::int64_t>> to_histogram(const std::map<std::int64_t, std::int64_t>& bins) {
  return {bins.begin(), bins.end()};
}

nlohmann::json histogram_json(const std::vector<std::pair<std::int64_t, std::int64_t>>& histogram) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [value, count] : histogram) j.push_back(nlohmann::json::array({value, count}));
  return j;
}

}  // namespace

double freedman_bound(const FreedmanParams& params) {
  if (params.lipschitz_k <= 0 || params.coordinates < 1 || params.p < 0 || params.p > 1 || params.t < 0)
    throw Error(Errc::InvalidParams, "freedman_bound parameter outside its domain");
  if (params.t == 0) return 1.0;
  const double k = params.lipschitz_k;
  const double denom = 4.0 * k * k * static_cast<double>(params.coordinates) * params.p + 2.0 * k * params.t;
  return std::exp(-params.t * params.t / denom);
}

Wilson wilson_interval(std::int64_t hits, std::int64_t samples) {
  Wilson w;
  if (samples <= 0) return w;
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double nd = static_cast<double>(samples);
  const double phat = static_cast<double>(hits) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double centre = (phat + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
  w.frequency = phat;
  w.lo = std::max(0.0, centre - half);
  w.hi = std::min(1.0, centre + half);
  return w;
}

namespace {

// Shared JM replica driver: applies `consume(replica, square)` to every
// sample, with replica r on stream r of the master seed.
void run_jm_replicas(int n, std::int64_t samples, std::uint64_t seed, std::int64_t burnin,
                     std::int64_t thin, int replicas,
                     const std::function<void(int, const LatinSquare&)>& consume) {
  const std::int64_t b = burnin >= 0 ? burnin : JmSampler::default_burnin(n);
  const std::int64_t t = thin >= 0 ? thin : JmSampler::default_thin(n);
  const std::vector<std::int64_t> share = replica_split(samples, replicas);
  parallel_for_indexed(static_cast<std::size_t>(replicas), [&](std::size_t r) {
    if (share[r] == 0) return;
    JmSampler sampler(n, b, t, Rng::stream(seed, r));
    for (std::int64_t i = 0; i < share[r]; ++i) consume(static_cast<int>(r), sampler.next());
  });
}

}  // namespace

DistributionReport mc_distribution(const DistributionConfig& config) {
  const auto start = Clock::now();
  DistributionReport report;
  report.config = config;
  if (config.replicas < 1) throw Error(Errc::InvalidParams, "need >= 1 replica", config.replicas);

  std::map<std::int64_t, std::int64_t> bins;
  Moments moments;
  if (config.sampler == SamplerKind::Exhaustive) {
    for_each_square(config.n, [&](const LatinSquare& square) {
      const std::int64_t v = square_statistic(square, config.statistic);
      ++bins[v];
      moments.add(v);
    });
  } else {
    std::vector<std::map<std::int64_t, std::int64_t>> replica_bins(config.replicas);
    run_jm_replicas(config.n, config.samples, config.seed, config.burnin, config.thin, config.replicas,
                    [&](int r, const LatinSquare& square) {
                      ++replica_bins[r][square_statistic(square, config.statistic)];
                    });
    for (const auto& rb : replica_bins)
      for (const auto& [value, count] : rb) {
        bins[value] += count;
        moments.add(value, count);
      }
  }
  report.samples_used = moments.count;
  report.histogram = to_histogram(bins);
  report.mean = moments.mean();
  report.variance = moments.variance();
  report.std_error = moments.std_error();
  report.wall_ms = elapsed_ms(start);
  return report;
}

TailReport tail_estimate(const TailConfig& config) {
  const auto start = Clock::now();
  TailReport report;
  report.config = config;
  const double base = static_cast<double>(config.n) * config.n / 4.0;
  report.threshold = config.direction == TailDirection::Lower ? (1.0 - config.delta) * base
                                                              : (1.0 + config.delta) * base;
  const auto hit = [&](std::int64_t value) {
    return config.direction == TailDirection::Lower ? static_cast<double>(value) <= report.threshold
                                                    : static_cast<double>(value) >= report.threshold;
  };

  std::int64_t hits = 0;
  std::int64_t used = 0;
  if (config.sampler == SamplerKind::Exhaustive) {
    for_each_square(config.n, [&](const LatinSquare& square) {
      ++used;
      if (hit(count_intercalates(square))) ++hits;
    });
  } else {
    std::vector<std::int64_t> replica_hits(static_cast<std::size_t>(config.replicas), 0);
    run_jm_replicas(config.n, config.samples, config.seed, config.burnin, config.thin, config.replicas,
                    [&](int r, const LatinSquare& square) {
                      if (hit(count_intercalates(square))) ++replica_hits[r];
                    });
    hits = std::accumulate(replica_hits.begin(), replica_hits.end(), std::int64_t{0});
    used = config.samples;
  }
  report.samples_used = used;
  report.hits = hits;
  report.wilson = wilson_interval(hits, used);
  report.wall_ms = elapsed_ms(start);
  return report;
}

GstarReport gstar_experiment(const GstarConfig& config) {
  const auto start = Clock::now();
  if (config.alpha <= 0.0 || config.alpha >= 1.0)
    throw Error(Errc::InvalidAlpha, "alpha must lie in (0,1)");
  if (config.replicas < 1) throw Error(Errc::InvalidParams, "need >= 1 replica", config.replicas);
  GstarReport report;
  report.config = config;

  struct ReplicaAccum {
    Moments n, n2, nprime;
    std::int64_t violations = 0;
  };
  std::vector<ReplicaAccum> acc(static_cast<std::size_t>(config.replicas));
  const std::vector<std::int64_t> share = replica_split(config.samples, config.replicas);
  const double p = config.alpha / config.n;

  parallel_for_indexed(static_cast<std::size_t>(config.replicas), [&](std::size_t r) {
    Rng rng = Rng::stream(config.seed, r);
    for (std::int64_t i = 0; i < share[r]; ++i) {
      const std::vector<Triple> g = sample_binomial_hypergraph(config.n, p, rng);
      const TripleSet gstar = prune_conflicts(config.n, g);
      const std::vector<Intercalate> star_ics = enumerate_intercalates(gstar);
      const std::int64_t n_val = static_cast<std::int64_t>(star_ics.size());
      const std::int64_t n2_val = shared_edge_pairs(enumerate_intercalates(config.n, g));
      const std::int64_t nprime_val =
          n_val <= 24 ? max_disjoint_family(star_ics, DisjointMode::Exact)
                      : max_disjoint_family(star_ics, DisjointMode::Greedy);
      acc[r].n.add(n_val);
      acc[r].n2.add(n2_val);
      acc[r].nprime.add(nprime_val);
      if (nprime_val < n_val - n2_val) ++acc[r].violations;
    }
  });

  Moments n_all, n2_all, np_all;
  for (const ReplicaAccum& a : acc) {
    n_all.merge(a.n);
    n2_all.merge(a.n2);
    np_all.merge(a.nprime);
    report.bollobas_violations += a.violations;
  }
  report.mc_n_mean = n_all.mean();
  report.mc_n_se = n_all.std_error();
  report.mc_n2_mean = n2_all.mean();
  report.mc_n2_se = n2_all.std_error();
  report.mc_nprime_mean = np_all.mean();
  report.mc_nprime_se = np_all.std_error();
  report.exact_n = expected_gstar_intercalates(config.n, config.alpha);
  report.exact_n2 = expected_shared_edge_pairs(config.n, config.alpha);
  report.asymptotic_n = gstar_intercalates_asymptotic(config.n, config.alpha);
  report.exact_over_asymptotic = report.exact_n / report.asymptotic_n;
  report.z_n = report.mc_n_se > 0 ? (report.mc_n_mean - report.exact_n) / report.mc_n_se : 0.0;
  report.z_n2 = report.mc_n2_se > 0 ? (report.mc_n2_mean - report.exact_n2) / report.mc_n2_se : 0.0;
  report.wall_ms = elapsed_ms(start);
  return report;
}

InheritanceReport inheritance_estimate(const LatinSquare& square, const InheritanceConfig& config) {
  const auto start = Clock::now();
  const int n = square.order();
  const std::int64_t cells = static_cast<std::int64_t>(n) * n;
  if (config.m < 0 || config.m > cells)
    throw Error(Errc::MTooLarge, "subset size exceeds n^2", config.m, cells);
  if (config.replicas < 1) throw Error(Errc::InvalidParams, "need >= 1 replica", config.replicas);

  InheritanceReport report;
  report.config = config;
  report.n = n;

  std::vector<Triple> all;
  all.reserve(static_cast<std::size_t>(cells));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) all.push_back({r, c, square.at(r, c)});

  std::vector<std::int64_t> replica_hits(static_cast<std::size_t>(config.replicas), 0);
  const std::vector<std::int64_t> share = replica_split(config.samples, config.replicas);
  parallel_for_indexed(static_cast<std::size_t>(config.replicas), [&](std::size_t w) {
    Rng rng = Rng::stream(config.seed, w);
    std::vector<Triple> pool = all;
    std::vector<Triple> subset(static_cast<std::size_t>(config.m));
    for (std::int64_t i = 0; i < share[w]; ++i) {
      // partial Fisher-Yates: the first m entries become the sample
      for (std::int64_t j = 0; j < config.m; ++j) {
        const std::int64_t pick = j + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cells - j)));
        std::swap(pool[j], pool[pick]);
        subset[j] = pool[j];
      }
      if (count_intercalates(n, subset) <= config.threshold) ++replica_hits[w];
    }
  });
  report.hits = std::accumulate(replica_hits.begin(), replica_hits.end(), std::int64_t{0});
  report.wilson = wilson_interval(report.hits, config.samples);
  report.wall_ms = elapsed_ms(start);
  return report;
}

std::string report_json(const DistributionReport& report) {
  nlohmann::json j;
  j["schema"] = "latinlab/1";
  j["kind"] = "distribution";
  j["config"] = {{"n", report.config.n},
                 {"sampler", report.config.sampler == SamplerKind::Jm ? "jm" : "exhaustive"},
                 {"statistic",
                  report.config.statistic == Statistic::Intercalates ? "intercalates" : "order3"},
                 {"samples", report.config.samples},
                 {"seed", report.config.seed},
                 {"burnin", report.config.burnin},
                 {"thin", report.config.thin},
                 {"replicas", report.config.replicas}};
  j["samples_used"] = report.samples_used;
  j["histogram"] = histogram_json(report.histogram);
  j["mean"] = report.mean;
  j["variance"] = report.variance;
  j["std_error"] = report.std_error;
  j["wall_ms"] = report.wall_ms;
  return j.dump();
}

std::string report_json(const TailReport& report) {
  nlohmann::json j;
  j["schema"] = "latinlab/1";
  j["kind"] = "tail";
  j["config"] = {{"n", report.config.n},
                 {"sampler", report.config.sampler == SamplerKind::Jm ? "jm" : "exhaustive"},
                 {"direction", report.config.direction == TailDirection::Lower ? "lower" : "upper"},
                 {"delta", report.config.delta},
                 {"samples", report.config.samples},
                 {"seed", report.config.seed},
                 {"burnin", report.config.burnin},
                 {"thin", report.config.thin},
                 {"replicas", report.config.replicas}};
  j["threshold"] = report.threshold;
  j["samples_used"] = report.samples_used;
  j["hits"] = report.hits;
  j["frequency"] = report.wilson.frequency;
  j["wilson_lo"] = report.wilson.lo;
  j["wilson_hi"] = report.wilson.hi;
  j["wall_ms"] = report.wall_ms;
  return j.dump();
}

std::string report_json(const GstarReport& report) {
  nlohmann::json j;
  j["schema"] = "latinlab/1";
  j["kind"] = "gstar";
  j["config"] = {{"n", report.config.n},
                 {"alpha", report.config.alpha},
                 {"samples", report.config.samples},
                 {"seed", report.config.seed},
                 {"replicas", report.config.replicas}};
  j["mc_n_mean"] = report.mc_n_mean;
  j["mc_n_se"] = report.mc_n_se;
  j["exact_n"] = report.exact_n;
  j["z_n"] = report.z_n;
  j["mc_n2_mean"] = report.mc_n2_mean;
  j["mc_n2_se"] = report.mc_n2_se;
  j["exact_n2"] = report.exact_n2;
  j["z_n2"] = report.z_n2;
  j["mc_nprime_mean"] = report.mc_nprime_mean;
  j["mc_nprime_se"] = report.mc_nprime_se;
  j["asymptotic_n"] = report.asymptotic_n;
  j["exact_over_asymptotic"] = report.exact_over_asymptotic;
  j["bollobas_violations"] = report.bollobas_violations;
  j["wall_ms"] = report.wall_ms;
  return j.dump();
}

std::string report_json(const InheritanceReport& report) {
  nlohmann::json j;
  j["schema"] = "latinlab/1";
  j["kind"] = "inheritance";
  j["config"] = {{"m", report.config.m},
                 {"threshold", report.config.threshold},
                 {"samples", report.config.samples},
                 {"seed", report.config.seed},
                 {"replicas", report.config.replicas}};
  j["n"] = report.n;
  j["hits"] = report.hits;
  j["frequency"] = report.wilson.frequency;
  j["wilson_lo"] = report.wilson.lo;
  j["wilson_hi"] = report.wilson.hi;
  j["wall_ms"] = report.wall_ms;
  return j.dump();
}

std::string histogram_csv(const std::vector<std::pair<std::int64_t, std::int64_t>>& histogram) {
  std::string csv = "value,count\n";
  for (const auto& [value, count] : histogram) {
    csv += std::to_string(value);
    csv += ',';
    csv += std::to_string(count);
    csv += '\n';
  }
  return csv;
}

}  // namespace latinlab
