#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "holelab/bounds.hpp"
#include "holelab/connector.hpp"
#include "holelab/errors.hpp"
#include "holelab/exposure.hpp"
#include "holelab/forest.hpp"
#include "holelab/graph.hpp"
#include "holelab/oracle.hpp"
#include "holelab/rng.hpp"

namespace holelab {

enum class Method { exact_path, exact_cycle, exact_tmatching, forest, pipeline, pipeline_cycle };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact_path: return "exact-path";
    case Method::exact_cycle: return "exact-cycle";
    case Method::exact_tmatching: return "exact-tmatching";
    case Method::forest: return "forest";
    case Method::pipeline: return "pipeline";
    case Method::pipeline_cycle: return "pipeline-cycle";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  for (Method m : {Method::exact_path, Method::exact_cycle, Method::exact_tmatching, Method::forest,
                   Method::pipeline, Method::pipeline_cycle})
    if (s == to_string(m)) return m;
  throw InputError("unknown method: " + s);
}

/// "path:k" for P_k or "star:k" for the star on k vertices.
inline Graph parse_tree_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  detail::require(colon != std::string::npos, "tree spec must be path:k or star:k");
  std::size_t k = 0;
  try {
    k = std::stoul(spec.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw InputError("bad tree order in " + spec);
  }
  detail::require(k >= 1, "tree order must be at least 1");
  const auto kind = spec.substr(0, colon);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < k; ++v) {
    if (kind == "path") edges.emplace_back(v - 1, v);
    else if (kind == "star") edges.emplace_back(0, v);
    else throw InputError("unknown tree kind: " + kind);
  }
  return Graph::from_edges(k, std::move(edges));
}

struct Cell {
  std::size_t n = 0;
  double d = 0;
  double epsilon = 0;
};

struct ExperimentConfig {
  std::vector<Cell> cells;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_count = 0;
  std::vector<Method> methods;
  std::size_t threads = 1;
  std::size_t L = 0;  ///< 0: effective_L(d)
  std::optional<double> p2;
  std::string tree = "path:2";
  std::string output;  ///< empty: caller decides
  std::string format;  ///< csv or json; empty: caller decides

  void validate() const {
    detail::require(!cells.empty(), "experiment config: no grid cells");
    detail::require(!methods.empty(), "experiment config: empty method list");
    detail::require(seed_count > 0, "experiment config: empty seed range");
    detail::require(threads >= 1, "experiment config: threads must be >= 1");
    for (const auto& c : cells) {
      detail::require(c.n >= 1, "experiment config: cell with n = 0");
      detail::require(c.d >= 0 && c.d <= static_cast<double>(c.n), "experiment config: need 0 <= d <= n");
      detail::require(c.epsilon >= 0 && c.epsilon <= 1, "experiment config: eps out of [0, 1]");
    }
    parse_tree_spec(tree);
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), "bad number for " + what + ": " + s);
  return v;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  require(used == s.size() && !s.empty() && s[0] != '-', "bad integer for " + what + ": " + s);
  return v;
}

}  // namespace detail

/// Flat "key = value" lines plus repeated "cell n=<> d=<> eps=<>" lines;
/// '#' starts a comment. Seeds are given as "seeds = a..b" (inclusive).
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    const auto line = detail::trim(raw);
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(lineno);
    if (line.rfind("cell", 0) == 0 && (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
      std::istringstream ls(line.substr(4));
      Cell c;
      bool has_n = false, has_d = false, has_e = false;
      std::string tok;
      while (ls >> tok) {
        const auto eq = tok.find('=');
        detail::require(eq != std::string::npos, where + ": expected key=value in cell line");
        const auto k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "n") c.n = detail::parse_uint(v, "n"), has_n = true;
        else if (k == "d") c.d = detail::parse_double(v, "d"), has_d = true;
        else if (k == "eps") c.epsilon = detail::parse_double(v, "eps"), has_e = true;
        else throw InputError(where + ": unknown cell key " + k);
      }
      detail::require(has_n && has_d && has_e, where + ": cell needs n, d and eps");
      cfg.cells.push_back(c);
      continue;
    }
    const auto eq = line.find('=');
    detail::require(eq != std::string::npos, where + ": expected key = value");
    const auto key = detail::trim(line.substr(0, eq)), val = detail::trim(line.substr(eq + 1));
    if (key == "seeds") {
      const auto dots = val.find("..");
      detail::require(dots != std::string::npos, where + ": seeds must look like a..b");
      const auto a = detail::parse_uint(val.substr(0, dots), "seeds"), b = detail::parse_uint(val.substr(dots + 2), "seeds");
      detail::require(a <= b, where + ": empty seed range");
      cfg.seed_first = a;
      cfg.seed_count = b - a + 1;
    } else if (key == "methods") {
      cfg.methods.clear();
      std::string item;
      std::istringstream ls(val);
      while (std::getline(ls, item, ','))
        if (auto t = detail::trim(item); !t.empty()) cfg.methods.push_back(parse_method(t));
    } else if (key == "threads") {
      cfg.threads = detail::parse_uint(val, key);
    } else if (key == "L") {
      cfg.L = detail::parse_uint(val, key);
    } else if (key == "p2") {
      cfg.p2 = detail::parse_double(val, key);
    } else if (key == "tree") {
      cfg.tree = val;
    } else if (key == "out") {
      cfg.output = val;
    } else if (key == "format") {
      detail::require(val == "csv" || val == "json", where + ": format must be csv or json");
      cfg.format = val;
    } else {
      throw InputError(where + ": unknown key " + key);
    }
  }
  cfg.validate();
  return cfg;
}

struct TrialRecord {
  std::size_t cell = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double d = 0;
  double epsilon = 0;
  Method method = Method::exact_path;
  std::uint64_t value = 0;  ///< vertex count of the object found
  double runtime_ms = 0;
  std::vector<std::string> flags;
  bool failed = false;
};

/// The graph a non-pipeline trial runs on.
inline Graph trial_graph(const Cell& c, std::size_t cell_index, std::uint64_t seed) {
  return sample_gnp(c.n, c.n ? c.d / static_cast<double>(c.n) : 0.0, RngSeed{seed, cell_index});
}

/// Master seed of a pipeline trial.
inline std::uint64_t trial_pipeline_seed(std::size_t cell_index, std::uint64_t seed) {
  return RngSeed{seed, cell_index}.key();
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t cell_index, std::uint64_t seed,
                             Method m) {
  const Cell& c = cfg.cells.at(cell_index);
  TrialRecord r{cell_index, seed, c.n, c.d, c.epsilon, m, 0, 0, {}, false};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (m) {
      case Method::exact_path: r.value = max_induced_path(trial_graph(c, cell_index, seed)).optimum; break;
      case Method::exact_cycle: r.value = max_induced_cycle(trial_graph(c, cell_index, seed)).optimum; break;
      case Method::exact_tmatching:
        r.value = max_induced_t_matching(trial_graph(c, cell_index, seed), parse_tree_spec(cfg.tree)).optimum;
        break;
      case Method::forest: {
        const Graph g = trial_graph(c, cell_index, seed);
        const std::size_t L = cfg.L ? cfg.L : effective_L(c.d);
        auto built = build_linear_forest(g, VertexSet::all(c.n), L, c.epsilon,
                                         RngSeed{seed, cell_index}.child(static_cast<std::uint64_t>(m)));
        r.value = built.stats.order;
        r.flags = built.stats.flags;
        break;
      }
      case Method::pipeline:
      case Method::pipeline_cycle: {
        PipelineConfig pc;
        pc.n = c.n;
        pc.d = c.d;
        pc.epsilon = c.epsilon;
        pc.L = cfg.L;
        pc.p2 = cfg.p2;
        pc.cycle = m == Method::pipeline_cycle;
        pc.seed = trial_pipeline_seed(cell_index, seed);
        auto rep = run_pipeline(pc);
        r.value = rep.order;
        r.flags = rep.flags;
        break;
      }
    }
  } catch (const InternalInvariantError&) {
    throw;
  } catch (const Error& e) {
    r.failed = true;
    r.value = 0;
    r.flags.push_back(std::string("error: ") + e.what());
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

struct SummaryRow {
  std::size_t cell = 0;
  Method method = Method::exact_path;
  std::size_t n = 0;
  double d = 0, epsilon = 0;
  std::size_t count = 0;   ///< successful trials
  std::size_t failed = 0;
  double mean = 0, stddev = 0, min = 0, max = 0;
  double two_log_q = 0, target_lower = 0, target_upper = 0;
  /// Talagrand scale t L sqrt(b + L) with b = mean; NaN below 30 trials.
  double talagrand_scale = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::vector<SummaryRow> summaries;
};

/// Lipschitz constant used for the concentration column.
inline double method_lipschitz(Method m, const ExperimentConfig& cfg, const Cell& c) {
  if (m == Method::exact_tmatching) return static_cast<double>(parse_tree_spec(cfg.tree).n());
  if (m == Method::forest) return static_cast<double>(cfg.L ? cfg.L : effective_L(c.d));
  return 1.0;
}

struct ConcentrationReport {
  std::size_t count = 0;
  double mean = 0;
  double stddev = 0;  ///< sample standard deviation
  double t = 0;
  double talagrand_scale = 0;  ///< t L sqrt(b + L), b = mean
  double log10_tail = 0;       ///< log10 exp(-t^2 / 4)
};

inline double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

/// Empirical spread of one cell/method next to the Talagrand scale at
/// t = sqrt(n) log^3 d / d.
inline ConcentrationReport concentration_report(const std::vector<TrialRecord>& records, double lipschitz) {
  std::vector<double> xs;
  for (const auto& r : records) {
    detail::require(r.cell == records.front().cell && r.method == records.front().method,
                    "concentration_report: records span several cells or methods");
    if (!r.failed) xs.push_back(static_cast<double>(r.value));
  }
  if (xs.size() < 30) throw InputError("concentration_report: need at least 30 successful records");
  ConcentrationReport rep;
  rep.count = xs.size();
  for (double x : xs) rep.mean += x;
  rep.mean /= static_cast<double>(xs.size());
  rep.stddev = sample_std(xs);
  const auto ti = bounds::talagrand_instantiation(static_cast<double>(records.front().n), records.front().d,
                                                  lipschitz, rep.mean);
  rep.t = ti.t;
  rep.talagrand_scale = ti.displacement;
  rep.log10_tail = ti.tail.log10();
  return rep;
}

/// Summary rows per (cell, method), in cell-then-method order. A pure
/// function of the records.
inline std::vector<SummaryRow> summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& records) {
  std::vector<SummaryRow> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci)
    for (Method m : cfg.methods) {
      const Cell& c = cfg.cells[ci];
      SummaryRow s{ci, m, c.n, c.d, c.epsilon};
      std::vector<TrialRecord> group;
      std::vector<double> xs;
      for (const auto& r : records)
        if (r.cell == ci && r.method == m) {
          group.push_back(r);
          if (r.failed) ++s.failed;
          else xs.push_back(static_cast<double>(r.value));
        }
      s.count = xs.size();
      if (xs.empty()) {
        s.mean = s.stddev = s.min = s.max = nan;
      } else {
        for (double x : xs) s.mean += x;
        s.mean /= static_cast<double>(xs.size());
        s.stddev = sample_std(xs);
        s.min = *std::min_element(xs.begin(), xs.end());
        s.max = *std::max_element(xs.begin(), xs.end());
      }
      if (c.d > 1.0 && c.d < static_cast<double>(c.n)) {
        const auto t = bounds::target_lengths(bounds::BoundInput::from_degree(c.n, c.d, c.epsilon));
        s.two_log_q = t.two_log_q;
        s.target_lower = t.target_lower;
        s.target_upper = t.target_upper;
        if (s.count >= 30) s.talagrand_scale = concentration_report(group, method_lipschitz(m, cfg, c)).talagrand_scale;
      } else {
        s.two_log_q = s.target_lower = s.target_upper = nan;
      }
      out.push_back(s);
    }
  return out;
}

/// One record per (cell, seed, method), computed on `cfg.threads` workers and
/// stored in (cell, seed, method) order.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t cell;
    std::uint64_t seed;
    Method method;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci)
    for (std::uint64_t s = 0; s < cfg.seed_count; ++s)
      for (Method m : cfg.methods) tasks.push_back({ci, cfg.seed_first + s, m});

  ExperimentResult res;
  res.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> stop{false};
  auto work = [&] {
    for (std::size_t i; !stop && (i = next.fetch_add(1)) < tasks.size();) {
      try {
        res.records[i] = run_trial(cfg, tasks[i].cell, tasks[i].seed, tasks[i].method);
      } catch (...) {
        if (!stop.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(cfg.threads, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  res.summaries = summarize(cfg, res.records);
  return res;
}

// ---------------------------------------------------------------------------
// Output

inline constexpr const char* csv_version_line = "# holelab-csv-v1";
inline constexpr const char* csv_columns =
    "kind,cell,n,d,epsilon,method,seed,value,runtime_ms,flags,count,failed,mean,std,min,max,"
    "two_log_q,target_lower,target_upper,talagrand_scale";

namespace detail {

inline std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace detail

inline void write_csv(std::ostream& out, const ExperimentResult& res) {
  out << csv_version_line << '\n' << csv_columns << '\n';
  for (const auto& r : res.records)
    out << "trial," << r.cell << ',' << r.n << ',' << detail::fmt(r.d) << ',' << detail::fmt(r.epsilon) << ','
        << to_string(r.method) << ',' << r.seed << ',' << r.value << ',' << detail::fmt(r.runtime_ms) << ','
        << detail::csv_field(detail::join(r.flags, "; ")) << ",,,,,,,,,,\n";
  for (const auto& s : res.summaries)
    out << "summary," << s.cell << ',' << s.n << ',' << detail::fmt(s.d) << ',' << detail::fmt(s.epsilon) << ','
        << to_string(s.method) << ",,,,," << s.count << ',' << s.failed << ',' << detail::fmt(s.mean) << ','
        << detail::fmt(s.stddev) << ',' << detail::fmt(s.min) << ',' << detail::fmt(s.max) << ','
        << detail::fmt(s.two_log_q) << ',' << detail::fmt(s.target_lower) << ',' << detail::fmt(s.target_upper)
        << ',' << detail::fmt(s.talagrand_scale) << '\n';
}

/// The CSV with the runtime column blanked, for determinism hashing.
inline std::string strip_runtime_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("trial,", 0) == 0) {
      // runtime_ms is field 9 (1-based); fields before it never contain commas.
      std::size_t pos = 0;
      for (int f = 0; f < 8 && pos != std::string::npos; ++f) pos = line.find(',', pos + 1);
      if (pos != std::string::npos) {
        const auto end = line.find(',', pos + 1);
        line.erase(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
      }
    }
    out << line << '\n';
  }
  return out.str();
}

}  // namespace holelab
