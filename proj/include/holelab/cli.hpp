#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holelab/bounds.hpp"
#include "holelab/certificate.hpp"
#include "holelab/connector.hpp"
#include "holelab/edge_list.hpp"
#include "holelab/errors.hpp"
#include "holelab/experiment.hpp"
#include "holelab/exposure.hpp"
#include "holelab/forest.hpp"
#include "holelab/oracle.hpp"

namespace holelab::cli {

using json = nlohmann::ordered_json;

inline json to_json(const InducedCertificate& c) {
  json edges = json::array();
  for (auto [u, v] : c.claimed_edges) edges.push_back({u, v});
  return {{"kind", to_string(c.kind)}, {"vertices", c.vertices}, {"edges", edges}};
}

inline json to_json(const ForestStats& s) {
  return {{"order", s.order},       {"components", s.components}, {"attempts", s.attempts},
          {"restarts", s.restarts}, {"flags", s.flags}};
}

inline json to_json(const PipelineReport& r) {
  return {{"p", r.p},
          {"p1", r.p1},
          {"p2", r.p2},
          {"L", r.L},
          {"zone", r.zone},
          {"stage", to_string(r.stage)},
          {"flags", r.flags},
          {"V0", r.v0_size},
          {"I", r.independent_size},
          {"V1", r.v1_size},
          {"forest", to_json(r.forest)},
          {"N", r.aux_vertices},
          {"D_edges", r.aux_edges},
          {"D_path_length", r.aux_path_length},
          {"source", r.source},
          {"order", r.order},
          {"length", r.length},
          {"verified", r.verified},
          {"certificate", to_json(r.certificate)}};
}

/// JSON array of objects to CSV: header from the first object's keys.
inline void write_table_csv(std::ostream& out, const json& rows) {
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      out << (first ? "" : ",");
      first = false;
      if (v.is_null()) continue;
      if (v.is_number_float()) out << holelab::detail::fmt(v.get<double>());
      else if (v.is_string()) out << holelab::detail::csv_field(v.get<std::string>());
      else out << v.dump();
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::uint64_t n = 0;
  double d = 0;
  double epsilon = 0.1;
  double delta = 2;
  std::optional<double> k, e_f, lipschitz, b, t;
  double s = 0, c = 0;
};

inline json bounds_row(const BoundsArgs& a) {
  using namespace holelab::bounds;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto in = BoundInput::from_degree(a.n, a.d, a.epsilon);
  holelab::detail::require(a.n >= 1 && a.d > 1.0 && in.p < 1.0, "bounds: need n >= 1 and 1 < d < n");
  in.delta = a.delta;
  in.k = a.k ? static_cast<std::uint64_t>(*a.k)
             : static_cast<std::uint64_t>(std::floor((2.0 - a.epsilon) * std::log(a.d) / in.log_q()));
  in.e_f = a.e_f ? static_cast<std::uint64_t>(*a.e_f) : (in.k ? in.k - 1 : 0);
  in.s = static_cast<std::uint64_t>(a.s);
  in.c = static_cast<std::uint64_t>(a.c);
  in.lipschitz = a.lipschitz ? *a.lipschitz : static_cast<double>(effective_L(a.d));
  in.b = a.b ? *a.b : 2.0 * static_cast<double>(a.n) / a.d * std::log(a.d);

  std::vector<std::string> warnings;
  auto guarded = [&](const char* what, auto&& f) -> double {
    try {
      return f();
    } catch (const Error& e) {
      warnings.push_back(std::string(what) + ": " + e.what());
      return nan;
    }
  };
  json row;
  row["n"] = in.n;
  row["d"] = in.d;
  row["p"] = in.p;
  row["q"] = in.q();
  row["epsilon"] = in.epsilon;
  row["Delta"] = in.delta;
  row["k"] = in.k;
  row["eF"] = in.e_f;
  row["s"] = in.s;
  row["c"] = in.c;
  row["L"] = in.lipschitz;
  row["b"] = in.b;
  row["log10_expected_copies"] = guarded("expected_copies", [&] { return expected_copies(in).log10(); });
  row["log10_conditional_probability"] =
      guarded("conditional_copy_probability", [&] { return conditional_copy_probability(in).log10(); });
  row["log10_compatible_count_bound"] =
      guarded("compatible_count_bound", [&] { return compatible_count_bound(in).log10(); });
  row["log10_second_moment_ratio"] = guarded("second_moment_ratio", [&] {
    auto r = second_moment_ratio(in);
    for (auto& w : r.warnings) warnings.push_back(w);
    return r.value.log10();
  });
  row["log10_pz_bound"] = guarded("paley_zygmund", [&] { return paley_zygmund_lower_bound(in).bound.log10(); });
  row["log10_pz_closed_form"] = -second_moment_closed_form_log(in) / std::log(10.0);
  const auto tm = first_moment_order(in);
  row["first_moment_t"] = tm;
  row["log10_first_moment"] =
      guarded("first_moment_upper_bound", [&] { return first_moment_upper_bound(in).log10(); });
  double t = nan, tail = nan, disp = nan;
  if (a.t) {
    const auto tt = talagrand_tail(in.lipschitz, in.b, *a.t);
    t = *a.t;
    tail = tt.tail.log10();
    disp = tt.displacement;
  } else {
    const auto ti = talagrand_instantiation(static_cast<double>(in.n), in.d, in.lipschitz, in.b);
    t = ti.t;
    tail = ti.tail.log10();
    disp = ti.displacement;
  }
  row["t"] = t;
  row["log10_talagrand_tail"] = tail;
  row["talagrand_displacement"] = disp;
  row["talagrand_allowance"] = static_cast<double>(in.n) / in.d;
  const auto tl = target_lengths(in);
  row["two_log_q"] = tl.two_log_q;
  row["target_lower"] = tl.target_lower;
  row["target_upper"] = tl.target_upper;
  row["component_order"] = tl.component_order;
  row["warnings"] = holelab::detail::join(warnings, "; ");
  return row;
}

struct Sweep {
  std::string var;
  double from = 0, to = 0, step = 1;
};

inline Sweep parse_sweep(const std::string& spec) {
  const auto eq = spec.find('='), dots = spec.find(".."), colon = spec.rfind(':');
  holelab::detail::require(eq != std::string::npos && dots != std::string::npos && colon != std::string::npos &&
                               eq < dots && dots < colon,
                           "sweep must look like var=a..b:step");
  Sweep s;
  s.var = spec.substr(0, eq);
  s.from = holelab::detail::parse_double(spec.substr(eq + 1, dots - eq - 1), "sweep start");
  s.to = holelab::detail::parse_double(spec.substr(dots + 2, colon - dots - 2), "sweep end");
  s.step = holelab::detail::parse_double(spec.substr(colon + 1), "sweep step");
  holelab::detail::require(s.step > 0 && s.from <= s.to, "sweep needs step > 0 and a <= b");
  return s;
}

inline void set_bounds_var(BoundsArgs& a, const std::string& var, double x) {
  if (var == "n") a.n = static_cast<std::uint64_t>(std::llround(x));
  else if (var == "d") a.d = x;
  else if (var == "epsilon") a.epsilon = x;
  else if (var == "Delta") a.delta = x;
  else if (var == "k") a.k = std::round(x);
  else if (var == "eF") a.e_f = std::round(x);
  else if (var == "s") a.s = std::round(x);
  else if (var == "c") a.c = std::round(x);
  else if (var == "L") a.lipschitz = x;
  else if (var == "b") a.b = x;
  else if (var == "t") a.t = x;
  else throw InputError("cannot sweep over " + var);
}

inline json bounds_table(BoundsArgs a, const std::optional<Sweep>& sweep) {
  json rows = json::array();
  if (!sweep) {
    rows.push_back(bounds_row(a));
    return rows;
  }
  const auto count = static_cast<std::size_t>(std::floor((sweep->to - sweep->from) / sweep->step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    set_bounds_var(a, sweep->var, sweep->from + static_cast<double>(i) * sweep->step);
    rows.push_back(bounds_row(a));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// entry point

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

inline json witness_json(const OracleResult& r, const std::string& problem, std::size_t n) {
  return {{"problem", problem}, {"n", n}, {"optimum", r.optimum}, {"witness", to_json(r.witness)},
          {"nodesExplored", r.nodes_explored}};
}

/// Runs the command line; returns the process exit code.
/// 0 success, 1 input or size error, 2 usage error, 3 internal invariant failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Induced paths and holes in sparse random graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out, "output file (default: standard output)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // gen
  auto* gen = app.add_subcommand("gen", "sample G(n, p) as the union of two layers");
  std::size_t gen_n = 0;
  std::optional<double> gen_d, gen_p, gen_p2;
  std::string gen_rounds;
  gen->add_option("--n", gen_n, "vertex count")->required();
  auto* od = gen->add_option("--d", gen_d, "expected degree; p = d / n");
  gen->add_option("--p", gen_p, "edge probability")->excludes(od);
  gen->add_option("--p2", gen_p2, "second layer probability (default d / (n log d))");
  gen->add_option("--rounds", gen_rounds, "round script; default reveals everything in both layers")
      ->check(CLI::ExistingFile);

  // exact
  auto* exact = app.add_subcommand("exact", "exact maximum induced path, cycle or T-matching");
  std::string problem, graph_file, tree_file;
  exact->add_option("problem", problem, "path, cycle or tmatching")
      ->required()
      ->check(CLI::IsMember({"path", "cycle", "tmatching"}));
  exact->add_option("--graph", graph_file, "edge-list file")->required()->check(CLI::ExistingFile);
  exact->add_option("--tree", tree_file, "edge-list file of T")->check(CLI::ExistingFile);

  // forest
  auto* forest = app.add_subcommand("forest", "greedy induced linear forest");
  std::string forest_graph;
  std::size_t forest_L = 0;
  double forest_eps = 0.1;
  forest->add_option("--graph", forest_graph, "edge-list file")->required()->check(CLI::ExistingFile);
  forest->add_option("--L", forest_L, "component order (default from the average degree)");
  forest->add_option("--epsilon", forest_eps, "zone fraction")->check(CLI::Range(0.0, 1.0));

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "forest-then-connect construction");
  PipelineConfig pc;
  double pipe_p2 = -1;
  std::string witness_out;
  pipe->add_option("--n", pc.n, "vertex count")->required();
  pipe->add_option("--d", pc.d, "expected degree")->required();
  pipe->add_option("--epsilon", pc.epsilon, "zone fraction")->check(CLI::Range(0.0, 1.0));
  pipe->add_option("--L", pc.L, "component order (default max(3, round(sqrt d / log^4 d)))");
  pipe->add_option("--p2", pipe_p2, "second layer probability (default d / (n log d))");
  pipe->add_flag("--cycle", pc.cycle, "return an induced cycle");
  pipe->add_option("--witness-out", witness_out, "write the final object as an edge list");

  // bounds
  auto* bnd = app.add_subcommand("bounds", "evaluate the moment and concentration bounds");
  BoundsArgs ba;
  double bk = -1, bef = -1, bL = -1, bb = -1, bt = -1;
  std::string sweep_spec;
  bnd->add_option("--n", ba.n, "vertex count")->required();
  bnd->add_option("--d", ba.d, "expected degree")->required();
  bnd->add_option("--epsilon", ba.epsilon, "epsilon");
  bnd->add_option("--Delta", ba.delta, "maximum degree of F");
  bnd->add_option("--k", bk, "order of F (default floor((2 - eps) log_q d))");
  bnd->add_option("--eF", bef, "edges of F (default k - 1)");
  bnd->add_option("--s", ba.s, "intersection size");
  bnd->add_option("--c", ba.c, "intersection components");
  bnd->add_option("--L", bL, "Lipschitz constant");
  bnd->add_option("--b", bb, "target order (default 2 (n/d) log d)");
  bnd->add_option("--t", bt, "Talagrand deviation (default sqrt(n) log^3 d / d)");
  bnd->add_option("--sweep", sweep_spec, "var=a..b:step");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte Carlo grid from a config file");
  std::string config_file;
  std::size_t threads = 0;
  exp->add_option("--config", config_file, "config file")->required()->check(CLI::ExistingFile);
  exp->add_option("--threads", threads, "worker threads (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) {
      err << "cannot open " << g.out << '\n';
      return 1;
    }
  }
  std::ostream& os = g.out.empty() ? out : file;
  auto emit_json = [&](const json& j) { os << j.dump(2) << '\n'; };

  try {
    if (*gen) {
      double p = gen_p ? *gen_p : (gen_d ? *gen_d / static_cast<double>(gen_n) : -1.0);
      holelab::detail::require(gen_d || gen_p, "gen: give --d or --p");
      const double d = p * static_cast<double>(gen_n);
      const double p2 = gen_p2 ? *gen_p2 : default_p2(gen_n, d);
      StagedSample s(gen_n, p, p2, g.seed);
      if (gen_rounds.empty()) {
        const auto all = VertexSet::all(gen_n);
        s.expose(all, all, Layer::both);
      } else {
        std::ifstream in(gen_rounds);
        for (const auto& r : parse_round_script(in, gen_n, std::filesystem::path(gen_rounds).parent_path()))
          s.expose(r.a, r.b, r.layers);
      }
      const Graph u = s.union_graph();
      if (g.format == "json") {
        json edges = json::array();
        for (auto [a, b] : u.edges()) edges.push_back({a, b});
        emit_json({{"n", gen_n},
                   {"p", s.p()},
                   {"p1", s.p1()},
                   {"p2", s.p2()},
                   {"rounds", s.rounds()},
                   {"g1_edges", s.edges(Layer::g1).size()},
                   {"g2_edges", s.edges(Layer::g2).size()},
                   {"edges", edges}});
      } else {
        write_edge_list(os, u);
      }
    } else if (*exact) {
      const Graph gr = read_edge_list_file(graph_file);
      OracleResult r;
      if (problem == "path") r = max_induced_path(gr);
      else if (problem == "cycle") r = max_induced_cycle(gr);
      else {
        holelab::detail::require(!tree_file.empty(), "exact tmatching: --tree is required");
        r = max_induced_t_matching(gr, read_edge_list_file(tree_file));
      }
      if (g.format == "csv") {
        os << "problem,n,optimum,nodes_explored,witness\n" << problem << ',' << gr.n() << ',' << r.optimum << ','
           << r.nodes_explored << ',';
        for (std::size_t i = 0; i < r.witness.vertices.size(); ++i) os << (i ? " " : "") << r.witness.vertices[i];
        os << '\n';
      } else {
        emit_json(witness_json(r, problem, gr.n()));
      }
    } else if (*forest) {
      const Graph gr = read_edge_list_file(forest_graph);
      const double avg = gr.n() ? 2.0 * static_cast<double>(gr.edge_count()) / static_cast<double>(gr.n()) : 0.0;
      const std::size_t L = forest_L ? forest_L : effective_L(avg);
      auto built = build_linear_forest(gr, VertexSet::all(gr.n()), L, forest_eps, RngSeed{g.seed, 0});
      const bool ok = verify_certificate(gr, built.forest.certificate());
      if (!ok) throw InternalInvariantError("forest failed the induced check");
      emit_json({{"L", built.forest.L},
                 {"zone", built.forest.zone},
                 {"forest", built.forest.components},
                 {"stats", to_json(built.stats)},
                 {"verified", ok}});
    } else if (*pipe) {
      if (pipe_p2 >= 0) pc.p2 = pipe_p2;
      pc.seed = g.seed;
      const auto rep = run_pipeline(pc);
      emit_json(to_json(rep));
      if (!witness_out.empty()) {
        std::ofstream w(witness_out);
        holelab::detail::require(static_cast<bool>(w), "cannot open " + witness_out);
        const auto& c = rep.certificate;
        std::vector<Edge> es;
        for (auto [a, b] : c.claimed_edges) es.emplace_back(a, b);
        write_edge_list(w, Graph::from_edges(pc.n, es));
      }
    } else if (*bnd) {
      if (bk >= 0) ba.k = bk;
      if (bef >= 0) ba.e_f = bef;
      if (bL >= 0) ba.lipschitz = bL;
      if (bb >= 0) ba.b = bb;
      if (bt >= 0) ba.t = bt;
      std::optional<Sweep> sweep;
      if (!sweep_spec.empty()) sweep = parse_sweep(sweep_spec);
      const json rows = bounds_table(ba, sweep);
      if (g.format == "json") emit_json(rows);
      else write_table_csv(os, rows);
    } else if (*exp) {
      std::ifstream in(config_file);
      auto cfg = parse_experiment_config(in);
      if (threads) cfg.threads = threads;
      const auto res = run_experiment(cfg);
      std::ofstream cfg_file;
      std::ostream* dest = &os;
      if (g.out.empty() && !cfg.output.empty()) {
        cfg_file.open(cfg.output);
        holelab::detail::require(static_cast<bool>(cfg_file), "cannot open " + cfg.output);
        dest = &cfg_file;
      }
      const std::string fmt = g.format.empty() ? (cfg.format.empty() ? "csv" : cfg.format) : g.format;
      if (fmt == "json") {
        json recs = json::array(), sums = json::array();
        for (const auto& r : res.records)
          recs.push_back({{"cell", r.cell}, {"n", r.n}, {"d", r.d}, {"epsilon", r.epsilon},
                          {"method", to_string(r.method)}, {"seed", r.seed}, {"value", r.value},
                          {"runtime_ms", r.runtime_ms}, {"flags", r.flags}, {"failed", r.failed}});
        for (const auto& s : res.summaries) {
          auto num = [](double x) { return std::isnan(x) ? json(nullptr) : json(x); };
          sums.push_back({{"cell", s.cell}, {"n", s.n}, {"d", s.d}, {"epsilon", s.epsilon},
                          {"method", to_string(s.method)}, {"count", s.count}, {"failed", s.failed},
                          {"mean", num(s.mean)}, {"std", num(s.stddev)}, {"min", num(s.min)},
                          {"max", num(s.max)}, {"two_log_q", num(s.two_log_q)},
                          {"target_lower", num(s.target_lower)}, {"target_upper", num(s.target_upper)},
                          {"talagrand_scale", num(s.talagrand_scale)}});
        }
        *dest << json{{"version", "holelab-csv-v1"}, {"records", recs}, {"summaries", sums}}.dump(2) << '\n';
      } else {
        write_csv(*dest, res);
      }
    }
  } catch (const InternalInvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace holelab::cli
