// latinlab command-line front end: sampling, counting, enumeration, the
// triangle removal process, the pruned binomial model, switchings,
// star/matching decomposition, constructions, Monte Carlo experiments and
// permanent bounds. See README.md for the file formats.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latinlab/codec.hpp"
#include "latinlab/constructions.hpp"
#include "latinlab/decompose.hpp"
#include "latinlab/harness.hpp"
#include "latinlab/intercalates.hpp"
#include "latinlab/permanent.hpp"
#include "latinlab/sampling.hpp"
#include "latinlab/switching.hpp"
#include "latinlab/trp.hpp"

namespace {

using namespace latinlab;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot open " + path);
  out << text;
}

struct ObjectOptions {
  std::string input = "-";
  std::string format = "grid";  // grid | triples | json
  std::string as = "square";    // square | rect | triples
};

void add_object_options(CLI::App* cmd, ObjectOptions& opts) {
  cmd->add_option("--in", opts.input, "input file, or - for stdin")->capture_default_str();
  cmd->add_option("--format", opts.format, "grid|triples|json")
      ->check(CLI::IsMember({"grid", "triples", "json"}))
      ->capture_default_str();
  cmd->add_option("--as", opts.as, "square|rect|triples")
      ->check(CLI::IsMember({"square", "rect", "triples"}))
      ->capture_default_str();
}

// Everything downstream consumes triples, so parse any of the
// format/kind combinations into one.
TripleSet parse_triples(const ObjectOptions& opts, const std::string& text) {
  if (opts.as == "triples")
    return opts.format == "json" ? decode_json_triples(text) : decode_triples(text);
  if (opts.as == "rect") {
    const LatinRectangle rect =
        opts.format == "json" ? decode_json_rectangle(text) : decode_grid_rectangle(text);
    return triple_view(rect);
  }
  const LatinSquare sq = opts.format == "json" ? decode_json_square(text) : decode_grid_square(text);
  return triple_view(sq);
}

int run(int argc, char** argv) {
  CLI::App app{"latinlab: random Latin squares, intercalates and their experiments"};
  // keep -h free for subcommand options; --help still works everywhere
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "draw Latin squares (Jacobson-Matthews) or rectangles");
  int sample_n = 8;
  int sample_k = 0;
  std::int64_t sample_count = 1, sample_burnin = -1, sample_thin = -1;
  std::uint64_t sample_seed = 0;
  std::string sample_mode = "jm", sample_out;
  sample->add_option("--n", sample_n, "order")->required();
  sample->add_option("--k", sample_k, "rectangle rows (0 = full square)")->capture_default_str();
  sample->add_option("--count,--samples", sample_count, "number of draws")->capture_default_str();
  sample->add_option("--burnin", sample_burnin, "burn-in moves (-1 = n^3)")->capture_default_str();
  sample->add_option("--thin", sample_thin, "proper visits between draws (-1 = n^2)")->capture_default_str();
  sample->add_option("--seed", sample_seed, "master seed")->capture_default_str();
  sample->add_option("--mode", sample_mode, "jm|exact-tiny|square-prefix")
      ->check(CLI::IsMember({"jm", "exact-tiny", "square-prefix"}))
      ->capture_default_str();
  sample->add_option("--out", sample_out, "output file (default stdout)");
  sample->callback([&] {
    std::string out;
    Rng rng(sample_seed);
    if (sample_k > 0 && sample_mode != "jm") {
      for (std::int64_t i = 0; i < sample_count; ++i) {
        const RectangleMode mode =
            sample_mode == "exact-tiny" ? RectangleMode::ExactTiny : RectangleMode::SquarePrefix;
        out += encode_grid(sample_rectangle(sample_k, sample_n, mode, rng));
        out += '\n';
      }
    } else {
      const std::int64_t burnin = sample_burnin >= 0 ? sample_burnin : JmSampler::default_burnin(sample_n);
      const std::int64_t thin = sample_thin >= 0 ? sample_thin : JmSampler::default_thin(sample_n);
      JmSampler sampler(sample_n, burnin, thin, rng);
      for (std::int64_t i = 0; i < sample_count; ++i) {
        const LatinSquare sq = sampler.next();
        out += sample_k > 0 ? encode_grid(LatinRectangle::from_square(sq, sample_k)) : encode_grid(sq);
        out += '\n';
      }
    }
    write_output(sample_out, out);
  });

  // ---- count ----
  auto* count = app.add_subcommand("count", "intercalate statistics of one object");
  ObjectOptions count_in;
  add_object_options(count, count_in);
  bool count_order3 = false;
  std::string count_out;
  count->add_flag("--order3", count_order3, "also report 3x3 subsquare count (squares only)");
  count->add_option("--out", count_out, "output file (default stdout)");
  count->callback([&] {
    const std::string text = read_input(count_in.input);
    nlohmann::json j;
    if (count_in.as == "square" && count_order3) {
      const LatinSquare sq =
          count_in.format == "json" ? decode_json_square(text) : decode_grid_square(text);
      const IntercalateStats stats = intercalate_stats(sq);
      j = nlohmann::json::parse(stats_json(stats));
      j["order3"] = count_order3_subsquares(sq);
    } else {
      const IntercalateStats stats = intercalate_stats(parse_triples(count_in, text));
      j = nlohmann::json::parse(stats_json(stats));
    }
    write_output(count_out, j.dump() + "\n");
  });

  // ---- enumerate ----
  auto* enumerate = app.add_subcommand("enumerate", "exhaustively list squares or rectangles");
  int enum_n = 3, enum_k = 0;
  bool enum_count_only = false;
  std::string enum_out;
  enumerate->add_option("--n", enum_n, "order")->required();
  enumerate->add_option("--k", enum_k, "rectangle rows (0 = squares)")->capture_default_str();
  enumerate->add_flag("--count-only", enum_count_only, "print only the total");
  enumerate->add_option("--out", enum_out, "output file (default stdout)");
  enumerate->callback([&] {
    std::string out;
    std::int64_t total = 0;
    if (enum_k > 0) {
      for_each_rectangle(enum_k, enum_n, [&](const LatinRectangle& r) {
        ++total;
        if (!enum_count_only) {
          out += encode_grid(r);
          out += '\n';
        }
      });
    } else {
      for_each_square(enum_n, [&](const LatinSquare& sq) {
        ++total;
        if (!enum_count_only) {
          out += encode_grid(sq);
          out += '\n';
        }
      });
    }
    if (enum_count_only) out = std::to_string(total) + "\n";
    write_output(enum_out, out);
  });

  // ---- trp ----
  auto* trp = app.add_subcommand("trp", "triangle removal process");
  int trp_n = 10, trp_m = -1, trp_h = 2;
  std::uint64_t trp_seed = 0;
  bool trp_trace = false;
  std::string trp_out;
  trp->add_option("--n", trp_n, "order")->required();
  trp->add_option("--m", trp_m, "steps (default 0.3 n^2)");
  trp->add_option("--seed", trp_seed, "seed")->capture_default_str();
  trp->add_flag("--trace", trp_trace, "emit a CSV trace instead of the removed triples");
  trp->add_option("--h", trp_h, "quasirandomness order for the trace deviation column")
      ->capture_default_str();
  trp->add_option("--out", trp_out, "output file (default stdout)");
  trp->callback([&] {
    const int m = trp_m >= 0 ? trp_m : (3 * trp_n * trp_n) / 10;
    Rng rng(trp_seed);
    const TrpOutcome outcome = trp_run(trp_n, m, rng, trp_trace);
    std::string out;
    if (trp_trace) {
      out = "step,edges,triangles,deviation\n";
      TripartiteGraph g = TripartiteGraph::complete(trp_n);
      std::size_t row = 0;
      out += "0," + std::to_string(g.edges()) + "," +
             std::to_string(static_cast<long long>(trp_n) * trp_n * trp_n) + "," +
             std::to_string(quasirandom_deviation(g, trp_h)) + "\n";
      for (const Triple& t : outcome.removed.sequence()) {
        g.remove_rc(t.row, t.col);
        g.remove_rs(t.row, t.sym);
        g.remove_cs(t.col, t.sym);
        const TrpTraceRow& tr = outcome.trace[row++];
        out += std::to_string(tr.step) + "," + std::to_string(tr.edges) + "," +
               std::to_string(tr.triangles) + "," + std::to_string(quasirandom_deviation(g, trp_h)) +
               "\n";
      }
    } else if (outcome.star) {
      out = "*\n" + encode_triples(outcome.removed.as_set());
    } else {
      out = encode_triples(outcome.removed.as_set());
    }
    write_output(trp_out, out);
  });

  // ---- gstar ----
  auto* gstar = app.add_subcommand("gstar", "pruned binomial model vs the exact expectations");
  GstarConfig gstar_config;
  std::string gstar_out, gstar_format = "json";
  gstar->add_option("--n", gstar_config.n, "order")->required();
  gstar->add_option("--alpha", gstar_config.alpha, "edge density parameter (p = alpha/n)")->required();
  gstar->add_option("--samples", gstar_config.samples, "draws")->capture_default_str();
  gstar->add_option("--seed", gstar_config.seed, "seed")->capture_default_str();
  gstar->add_option("--format", gstar_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  gstar->add_option("--out", gstar_out, "output file (default stdout)");
  gstar->callback([&] {
    const GstarReport report = gstar_experiment(gstar_config);
    if (gstar_format == "csv") {
      std::string csv = "key,value\n";
      const auto put = [&csv](const char* key, double v) {
        csv += std::string(key) + "," + std::to_string(v) + "\n";
      };
      put("mc_n_mean", report.mc_n_mean);
      put("mc_n_se", report.mc_n_se);
      put("exact_n", report.exact_n);
      put("z_n", report.z_n);
      put("mc_n2_mean", report.mc_n2_mean);
      put("mc_n2_se", report.mc_n2_se);
      put("exact_n2", report.exact_n2);
      put("z_n2", report.z_n2);
      put("mc_nprime_mean", report.mc_nprime_mean);
      put("exact_over_asymptotic", report.exact_over_asymptotic);
      csv += "bollobas_violations," + std::to_string(report.bollobas_violations) + "\n";
      write_output(gstar_out, csv);
    } else {
      write_output(gstar_out, report_json(report) + "\n");
    }
  });

  // ---- switchings ----
  auto* switchings = app.add_subcommand("switchings", "per-switching effect report for a rectangle");
  std::string sw_rect, sw_out;
  int sw_restrict = -1;
  switchings->add_option("--rect", sw_rect, "rectangle file (grid format)")->required();
  switchings->add_option("--restrict-rows", sw_restrict, "lowest switchable row (0-based)");
  switchings->add_option("--out", sw_out, "output file (default stdout)");
  switchings->callback([&] {
    const LatinRectangle rect = decode_grid_rectangle(read_input(sw_rect));
    const SwitchingReport report =
        switching_effect_report(rect, sw_restrict >= 0 ? std::optional<int>(sw_restrict) : std::nullopt);
    write_output(sw_out, switching_report_csv(report));
  });

  // ---- decompose ----
  auto* decompose = app.add_subcommand("decompose", "star/matching partition of a 3-uniform hypergraph");
  std::string dec_edges, dec_out;
  int dec_r = 1;
  decompose->add_option("--edges", dec_edges, "edge file: 'V m' then m lines 'a b c' (1-based)")->required();
  decompose->add_option("--r", dec_r, "part size threshold")->required();
  decompose->add_option("--out", dec_out, "output file (default stdout)");
  decompose->callback([&] {
    std::istringstream in(read_input(dec_edges));
    int v = 0, m = 0;
    if (!(in >> v >> m)) throw Error(Errc::ParseError, "expected 'V m' header", 1);
    std::vector<std::array<std::int32_t, 3>> edges;
    for (int i = 0; i < m; ++i) {
      int a = 0, b = 0, c = 0;
      if (!(in >> a >> b >> c)) throw Error(Errc::ParseError, "expected edge line 'a b c'", i + 2);
      edges.push_back({a - 1, b - 1, c - 1});
    }
    const Hypergraph3 h(v, std::move(edges));
    const StarMatchingPartition partition = star_matching_partition(h, dec_r);
    nlohmann::json j;
    j["schema"] = "latinlab/1";
    j["r"] = dec_r;
    j["stars"] = partition.stars;
    j["matchings"] = partition.matchings;
    j["colours_used"] = partition.colours_used;
    nlohmann::json parts = nlohmann::json::array();
    for (const HypergraphPart& part : partition.parts) {
      nlohmann::json edges_json = nlohmann::json::array();
      for (std::size_t idx : part.edge_indices) {
        const auto& e = h.edges()[idx];
        edges_json.push_back(nlohmann::json::array({e[0] + 1, e[1] + 1, e[2] + 1}));
      }
      parts.push_back({{"kind", part.kind == PartKind::Star ? "star" : "matching"},
                       {"edges", std::move(edges_json)}});
    }
    j["parts"] = std::move(parts);
    write_output(dec_out, j.dump() + "\n");
  });

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "structured and extremal squares");
  int con_boolean = -1, con_cyclic = -1, con_free = -1;
  std::string con_out;
  construct->add_option("--boolean", con_boolean, "boolean group exponent q");
  construct->add_option("--cyclic", con_cyclic, "cyclic group modulus m");
  construct->add_option("--intercalate-free", con_free, "search order n");
  construct->add_option("--out", con_out, "output file (default stdout)");
  construct->callback([&] {
    int selected = (con_boolean >= 0) + (con_cyclic >= 0) + (con_free >= 0);
    if (selected != 1)
      throw CLI::ValidationError("construct", "pass exactly one of --boolean, --cyclic, --intercalate-free");
    if (con_boolean >= 0) {
      write_output(con_out, encode_grid(group_square(GroupSpec::boolean_group(con_boolean))));
    } else if (con_cyclic >= 0) {
      write_output(con_out, encode_grid(group_square(GroupSpec::cyclic(con_cyclic))));
    } else {
      const auto found = search_intercalate_free(con_free);
      if (!found) {
        write_output(con_out, "NotFound\n");
      } else {
        write_output(con_out, encode_grid(*found));
      }
    }
  });

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "seeded Monte Carlo reports");
  std::string exp_kind = "dist", exp_sampler = "jm", exp_direction = "lower", exp_statistic = "intercalates";
  std::string exp_out, exp_hist_csv, exp_in, exp_format = "json";
  DistributionConfig dist_config;
  double exp_delta = 0.5;
  std::int64_t exp_m = 0, exp_threshold = 0;
  experiment->add_option("--kind", exp_kind, "dist|tail|inherit")
      ->check(CLI::IsMember({"dist", "tail", "inherit"}))
      ->capture_default_str();
  experiment->add_option("--n", dist_config.n, "order")->capture_default_str();
  experiment->add_option("--sampler", exp_sampler, "jm|exhaustive")
      ->check(CLI::IsMember({"jm", "exhaustive"}))
      ->capture_default_str();
  experiment->add_option("--statistic", exp_statistic, "intercalates|order3")
      ->check(CLI::IsMember({"intercalates", "order3"}))
      ->capture_default_str();
  experiment->add_option("--samples", dist_config.samples, "sample count")->capture_default_str();
  experiment->add_option("--seed", dist_config.seed, "master seed")->capture_default_str();
  experiment->add_option("--burnin", dist_config.burnin, "burn-in moves (-1 = n^3)")->capture_default_str();
  experiment->add_option("--thin", dist_config.thin, "thinning (-1 = n^2)")->capture_default_str();
  experiment->add_option("--replicas", dist_config.replicas, "logical replicas")->capture_default_str();
  experiment->add_option("--direction", exp_direction, "tail: lower|upper")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  experiment->add_option("--delta", exp_delta, "tail: threshold offset")->capture_default_str();
  experiment->add_option("--m", exp_m, "inherit: subset size");
  experiment->add_option("--threshold", exp_threshold, "inherit: intercalate bound");
  experiment->add_option("--in", exp_in, "inherit: square file (grid format)");
  experiment->add_option("--format", exp_format, "json report or value,count CSV (dist only)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  experiment->add_option("--out", exp_out, "output file (default stdout)");
  experiment->add_option("--hist-csv", exp_hist_csv, "also write the histogram as value,count CSV");
  experiment->callback([&] {
    const SamplerKind sampler = exp_sampler == "jm" ? SamplerKind::Jm : SamplerKind::Exhaustive;
    if (exp_kind == "dist") {
      dist_config.sampler = sampler;
      dist_config.statistic =
          exp_statistic == "order3" ? Statistic::Order3Subsquares : Statistic::Intercalates;
      const DistributionReport report = mc_distribution(dist_config);
      write_output(exp_out, exp_format == "csv" ? histogram_csv(report.histogram)
                                                : report_json(report) + "\n");
      if (!exp_hist_csv.empty()) write_output(exp_hist_csv, histogram_csv(report.histogram));
    } else if (exp_kind == "tail") {
      TailConfig config;
      config.n = dist_config.n;
      config.sampler = sampler;
      config.direction = exp_direction == "lower" ? TailDirection::Lower : TailDirection::Upper;
      config.delta = exp_delta;
      config.samples = dist_config.samples;
      config.seed = dist_config.seed;
      config.burnin = dist_config.burnin;
      config.thin = dist_config.thin;
      config.replicas = dist_config.replicas;
      write_output(exp_out, report_json(tail_estimate(config)) + "\n");
    } else {
      if (exp_in.empty()) throw CLI::ValidationError("experiment", "--kind inherit needs --in");
      const LatinSquare sq = decode_grid_square(read_input(exp_in));
      InheritanceConfig config;
      config.m = exp_m;
      config.threshold = exp_threshold;
      config.samples = dist_config.samples;
      config.seed = dist_config.seed;
      config.replicas = dist_config.replicas;
      write_output(exp_out, report_json(inheritance_estimate(sq, config)) + "\n");
    }
  });

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "permanent sandwich for a rectangle, or a Freedman bound");
  std::string bounds_rect, bounds_out;
  bool bounds_freedman = false;
  FreedmanParams freedman;
  bounds->add_option("--rect", bounds_rect, "rectangle file (grid format)");
  bounds->add_flag("--freedman", bounds_freedman, "evaluate the concentration bound instead");
  bounds->add_option("--K", freedman.lipschitz_k, "Lipschitz constant");
  bounds->add_option("--N", freedman.coordinates, "coordinate count");
  bounds->add_option("--p", freedman.p, "coordinate probability");
  bounds->add_option("--t", freedman.t, "deviation");
  bounds->add_option("--out", bounds_out, "output file (default stdout)");
  bounds->callback([&] {
    nlohmann::json j;
    j["schema"] = "latinlab/1";
    if (bounds_freedman) {
      j["kind"] = "freedman";
      j["bound"] = freedman_bound(freedman);
    } else {
      if (bounds_rect.empty()) throw CLI::ValidationError("bounds", "pass --rect or --freedman");
      const LatinRectangle rect = decode_grid_rectangle(read_input(bounds_rect));
      const ExtensionBounds b = extension_bounds(rect);
      j["kind"] = "extensions";
      j["k"] = rect.rows_count();
      j["n"] = rect.order();
      j["bregman_upper"] = b.bregman_upper;
      j["evf_lower"] = b.evf_lower;
      if (rect.order() <= 30) j["exact"] = uint128_to_string(count_row_extensions(rect));
    }
    write_output(bounds_out, j.dump() + "\n");
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
