#include "latinlab/trp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace latinlab {

TripartiteGraph TripartiteGraph::complete(int n) {
  TripartiteGraph g;
  g.n_ = n;
  g.words_ = (n + 63) / 64;
  const std::size_t total = static_cast<std::size_t>(n) * g.words_;
  std::vector<std::uint64_t> full_rows(total, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      full_rows[static_cast<std::size_t>(a) * g.words_ + b / 64] |= 1ULL << (b % 64);
  g.rc_ = full_rows;
  g.cr_ = full_rows;
  g.rs_ = full_rows;
  g.sr_ = full_rows;
  g.cs_ = full_rows;
  g.sc_ = std::move(full_rows);
  g.edges_ = 3LL * n * n;
  return g;
}

void TripartiteGraph::remove_rc(int r, int c) {
  if (!has_rc(r, c)) return;
  clear(rc_, r, c);
  clear(cr_, c, r);
  --edges_;
}
void TripartiteGraph::remove_rs(int r, int s) {
  if (!has_rs(r, s)) return;
  clear(rs_, r, s);
  clear(sr_, s, r);
  --edges_;
}
void TripartiteGraph::remove_cs(int c, int s) {
  if (!has_cs(c, s)) return;
  clear(cs_, c, s);
  clear(sc_, s, c);
  --edges_;
}

namespace {

// Uniform selection with swap-remove over the current triangle set, with a
// position index keyed by packed triple id.
class TriangleStore {
 public:
  explicit TriangleStore(int n) {
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    list_.resize(total);
    pos_.assign(total, 0);
    for (std::size_t id = 0; id < total; ++id) {
      list_[id] = static_cast<std::uint32_t>(id);
      pos_[id] = static_cast<std::int64_t>(id);
    }
  }

  std::int64_t size() const { return static_cast<std::int64_t>(list_.size()); }
  std::uint32_t at(std::int64_t i) const { return list_[static_cast<std::size_t>(i)]; }

  void erase(std::uint32_t id) {
    const std::int64_t where = pos_[id];
    if (where < 0) return;
    const std::uint32_t last = list_.back();
    list_[static_cast<std::size_t>(where)] = last;
    pos_[last] = where;
    list_.pop_back();
    pos_[id] = -1;
  }

 private:
  std::vector<std::uint32_t> list_;
  std::vector<std::int64_t> pos_;
};

template <typename Fn>
void for_set_bits(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, Fn&& fn) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t bits = a[w] & b[w];
    while (bits) {
      fn(static_cast<int>(w * 64 + __builtin_ctzll(bits)));
      bits &= bits - 1;
    }
  }
}

}  // namespace

TrpOutcome trp_run(int n, int m, Rng& rng, bool record_trace) {
  if (n < 1) throw Error(Errc::InvalidParams, "order must be >= 1", n);
  if (m < 0 || m > n * n) throw Error(Errc::InvalidParams, "need 0 <= m <= n^2", m);
  if (static_cast<std::int64_t>(n) * n * n > (1LL << 31))
    throw Error(Errc::SizeGuard, "triangle store supports n <= 1290", n);

  TripartiteGraph g = TripartiteGraph::complete(n);
  TriangleStore store(n);
  TrpOutcome out;
  out.removed = OrderedTripleSet(n);
  const auto pack = [n](int r, int c, int s) {
    return static_cast<std::uint32_t>((static_cast<std::size_t>(r) * n + c) * n + s);
  };

  for (int step = 0; step < m; ++step) {
    if (store.size() == 0) {
      out.star = true;
      return out;
    }
    const std::uint32_t id = store.at(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(store.size()))));
    const int r = static_cast<int>(id / (static_cast<std::uint32_t>(n) * n));
    const int c = static_cast<int>((id / n) % static_cast<std::uint32_t>(n));
    const int s = static_cast<int>(id % static_cast<std::uint32_t>(n));

    // every triangle sharing an edge with (r,c,s) dies with it
    for_set_bits(g.row_syms(r), g.col_syms(c), [&](int s2) { store.erase(pack(r, c, s2)); });
    for_set_bits(g.row_cols(r), g.sym_cols(s), [&](int c2) { store.erase(pack(r, c2, s)); });
    for_set_bits(g.col_rows(c), g.sym_rows(s), [&](int r2) { store.erase(pack(r2, c, s)); });
    g.remove_rc(r, c);
    g.remove_rs(r, s);
    g.remove_cs(c, s);
    out.removed.push_back({r, c, s});
    if (record_trace) out.trace.push_back({step + 1, g.edges(), store.size()});
  }
  return out;
}

std::vector<Triple> sample_binomial_hypergraph(int n, double p, Rng& rng) {
  if (p < 0.0 || p > 1.0) throw Error(Errc::InvalidParams, "p must lie in [0,1]");
  const std::int64_t total = static_cast<std::int64_t>(n) * n * n;
  std::vector<Triple> out;
  const auto unpack = [n](std::int64_t id) {
    return Triple{static_cast<std::int32_t>(id / (static_cast<std::int64_t>(n) * n)),
                  static_cast<std::int32_t>((id / n) % n), static_cast<std::int32_t>(id % n)};
  };
  if (p <= 0.0) return out;
  if (p >= 1.0) {
    out.reserve(static_cast<std::size_t>(total));
    for (std::int64_t id = 0; id < total; ++id) out.push_back(unpack(id));
    return out;
  }
  if (p >= 0.03125) {
    const std::uint64_t threshold = Rng::threshold_for(p);
    for (std::int64_t id = 0; id < total; ++id)
      if (rng.bernoulli(threshold)) out.push_back(unpack(id));
    return out;
  }
  // sparse regime: geometric gaps between successive inclusions
  const double log_q = std::log1p(-p);
  std::int64_t id = -1;
  for (;;) {
    const double u = rng.unit();
    id += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
    if (id >= total) break;
    out.push_back(unpack(id));
  }
  return out;
}

TripleSet prune_conflicts(int n, const std::vector<Triple>& triples) {
  std::unordered_map<std::uint64_t, int> rc, rs, cs;
  rc.reserve(triples.size() * 2);
  rs.reserve(triples.size() * 2);
  cs.reserve(triples.size() * 2);
  const auto key = [](std::int32_t a, std::int32_t b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  for (const Triple& t : triples) {
    ++rc[key(t.row, t.col)];
    ++rs[key(t.row, t.sym)];
    ++cs[key(t.col, t.sym)];
  }
  std::vector<Triple> survivors;
  for (const Triple& t : triples)
    if (rc[key(t.row, t.col)] == 1 && rs[key(t.row, t.sym)] == 1 && cs[key(t.col, t.sym)] == 1)
      survivors.push_back(t);
  std::sort(survivors.begin(), survivors.end());
  survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
  return TripleSet::unchecked(n, std::move(survivors));
}

TripartiteGraph uncovered_graph(int n, const std::vector<Triple>& triples) {
  TripartiteGraph g = TripartiteGraph::complete(n);
  for (const Triple& t : triples) {
    g.remove_rc(t.row, t.col);
    g.remove_rs(t.row, t.sym);
    g.remove_cs(t.col, t.sym);
  }
  return g;
}

namespace {

struct NeighbourProvider {
  std::span<const std::uint64_t> bits;
};

std::int64_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::int64_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += __builtin_popcountll(a[w] & b[w]);
  return total;
}

std::int64_t popcount_and3(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           std::span<const std::uint64_t> c) {
  std::int64_t total = 0;
  for (std::size_t w = 0; w < a.size(); ++w) total += __builtin_popcountll(a[w] & b[w] & c[w]);
  return total;
}

std::int64_t popcount(std::span<const std::uint64_t> a) {
  std::int64_t total = 0;
  for (std::uint64_t w : a) total += __builtin_popcountll(w);
  return total;
}

double deviation_against(double actual, double predicted) {
  if (predicted == 0.0) return actual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(actual / predicted - 1.0);
}

double quasirandom_impl(const TripartiteGraph& g, int h, std::int64_t size3_samples, Rng* rng) {
  if (h < 1) throw Error(Errc::InvalidParams, "h must be >= 1", h);
  if (h > 3) throw Error(Errc::HTooLarge, "common-neighbourhood scan supports h <= 3", h);
  if (h == 3 && rng == nullptr)
    throw Error(Errc::InvalidParams, "h = 3 is sampled; pass a sample budget and rng");

  const int n = g.order();
  const double density = static_cast<double>(g.edges()) / (3.0 * n * n);
  const double pred1 = density * n;
  const double pred2 = density * pred1;
  const double pred3 = density * pred2;

  double worst = 0.0;
  // one pass per target part; providers are the 2n vertices of the other parts
  for (int part = 0; part < 3; ++part) {
    std::vector<NeighbourProvider> providers;
    providers.reserve(2 * static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      providers.push_back({part == 0   ? g.col_rows(v)
                           : part == 1 ? g.row_cols(v)
                                       : g.row_syms(v)});
    for (int v = 0; v < n; ++v)
      providers.push_back({part == 0   ? g.sym_rows(v)
                           : part == 1 ? g.sym_cols(v)
                                       : g.col_syms(v)});

    for (std::size_t i = 0; i < providers.size(); ++i)
      worst = std::max(worst, deviation_against(static_cast<double>(popcount(providers[i].bits)), pred1));
    if (h >= 2) {
      for (std::size_t i = 0; i < providers.size(); ++i)
        for (std::size_t j = i + 1; j < providers.size(); ++j)
          worst = std::max(worst, deviation_against(
                                      static_cast<double>(popcount_and(providers[i].bits, providers[j].bits)),
                                      pred2));
    }
    if (h == 3) {
      const std::uint64_t count = providers.size();
      for (std::int64_t t = 0; t < size3_samples; ++t) {
        std::uint64_t i = rng->below(count), j = rng->below(count), k = rng->below(count);
        if (i == j || j == k || i == k) continue;
        worst = std::max(worst,
                         deviation_against(static_cast<double>(popcount_and3(
                                               providers[i].bits, providers[j].bits, providers[k].bits)),
                                           pred3));
      }
    }
  }
  return worst;
}

}  // namespace

double quasirandom_deviation(const TripartiteGraph& g, int h) {
  if (h == 3) throw Error(Errc::InvalidParams, "h = 3 requires the sampled overload", h);
  return quasirandom_impl(g, h, 0, nullptr);
}

double quasirandom_deviation(const TripartiteGraph& g, int h, std::int64_t size3_samples, Rng& rng) {
  return quasirandom_impl(g, h, size3_samples, &rng);
}

double trace_quasirandomness(int n, const OrderedTripleSet& removed, int h) {
  TripartiteGraph g = TripartiteGraph::complete(n);
  double worst = quasirandom_deviation(g, h);
  for (const Triple& t : removed.sequence()) {
    g.remove_rc(t.row, t.col);
    g.remove_rs(t.row, t.sym);
    g.remove_cs(t.col, t.sym);
    worst = std::max(worst, quasirandom_deviation(g, h));
  }
  return worst;
}

namespace {

double choose2_cubed(int n) {
  const double pairs = 0.5 * static_cast<double>(n) * (n - 1);
  return pairs * pairs * pairs;
}

}  // namespace

double expected_gstar_intercalates(int n, double alpha) {
  const double p = alpha / n;
  return 2.0 * choose2_cubed(n) * std::pow(p, 4) * std::pow(1.0 - p, 12.0 * (n - 1) - 8.0);
}

double gstar_intercalates_asymptotic(int n, double alpha) {
  return std::exp(-12.0 * alpha) * std::pow(alpha, 4) * static_cast<double>(n) * n / 4.0;
}

double expected_shared_edge_pairs(int n, double alpha) {
  const double p = alpha / n;
  const double c3 = choose2_cubed(n);
  // unordered pairs of distinct patterns sharing exactly one edge (7 distinct
  // edges) and exactly two edges (6 distinct edges)
  const double nn = static_cast<double>(n);
  const double one_shared = 4.0 * c3 * ((nn - 1) * (nn - 1) * (nn - 1) - 3.0 * (nn - 2) - 1.0);
  const double two_shared = 6.0 * (nn - 2) * c3;
  return one_shared * std::pow(p, 7) + two_shared * std::pow(p, 6);
}

}  // namespace latinlab
