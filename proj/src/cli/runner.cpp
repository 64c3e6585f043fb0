#include "scj/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "scj/analytic/analytic.hpp"
#include "scj/analytic/model.hpp"
#include "scj/core/parallel.hpp"
#include "scj/mc/montecarlo.hpp"
#include "scj/opt/optimizer.hpp"

namespace scj::cli {

namespace {

using Clock = std::chrono::steady_clock;
using Cell = std::optional<double>;

struct Row {
  std::vector<Cell> cells;
  std::string status = "ok";
  double wall_ms = 0.0;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string grid_description(const ExperimentConfig& cfg) {
  if (cfg.axes.empty()) return "single point";
  std::string out;
  for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
    if (a) out += " x ";
    const auto& ax = cfg.axes[a];
    for (std::size_t k = 0; k < ax.keys.size(); ++k) out += (k ? "|" : "") + ax.keys[k];
    out += "[" + std::to_string(ax.size()) + "]";
  }
  return out + " (" + std::to_string(cfg.grid_size()) + " points)";
}

std::vector<std::pair<std::string, std::string>> metadata(const ExperimentConfig& cfg, Mode mode,
                                                          Engine engine) {
  std::vector<std::pair<std::string, std::string>> m = {
      {"scj", kVersion},
      {"mode", to_string(mode)},
      {"config", cfg.path},
      {"scheme", to_string(cfg.scheme)},
      {"scenario", to_string(cfg.scenario)},
      {"engine", to_string(engine)},
      {"analytic_engine_version", std::to_string(kAnalyticEngineVersion)},
      {"mc_engine_version", std::to_string(kMonteCarloEngineVersion)},
      {"seed", std::to_string(cfg.seed)},
      {"grid", grid_description(cfg)},
  };
  if (engine != Engine::Analytic) {
    m.emplace_back("trials", std::to_string(cfg.trials));
    m.emplace_back("trials_ps", std::to_string(cfg.trials_ps));
    m.emplace_back("window_radius", format_double(cfg.window_radius));
  }
  if (mode == Mode::Validate) m.emplace_back("tolerance", format_double(cfg.tolerance));
  for (const auto& [k, v] : cfg.emitted) m.emplace_back("param " + k, format_double(v));
  return m;
}

std::string write_csv(const std::vector<std::pair<std::string, std::string>>& meta,
                      const Table& t, bool timing) {
  std::ostringstream out;
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << ",status" << (timing ? ",wall_ms" : "") << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.cells.size(); ++i)
      out << (i ? "," : "") << (r.cells[i] ? format_double(*r.cells[i]) : "");
    out << "," << csv_field(r.status);
    if (timing) out << "," << format_double(r.wall_ms);
    out << "\n";
  }
  return out.str();
}

std::string write_json(const std::vector<std::pair<std::string, std::string>>& meta,
                       const Table& t, bool timing) {
  nlohmann::ordered_json doc;
  for (const auto& [k, v] : meta) doc["metadata"][k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      row[t.columns[i]] = r.cells[i] ? nlohmann::ordered_json(*r.cells[i]) : nullptr;
    row["status"] = r.status;
    if (timing) row["wall_ms"] = r.wall_ms;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render(const ExperimentConfig& cfg, Mode mode, Engine engine, const Table& t,
                   bool timing) {
  const auto meta = metadata(cfg, mode, engine);
  return cfg.format == Format::Json ? write_json(meta, t, timing) : write_csv(meta, t, timing);
}

// Models keyed by structure; built lazily, one per distinct structure.
class ModelCache {
public:
  ModelCache(const QuadratureConfig& q, unsigned threads) : q_(q), threads_(threads) {}

  const AnalyticModel& get(const SystemParams& p) {
    for (const auto& m : models_)
      if (m->compatible(p)) return *m;
    models_.push_back(std::make_unique<AnalyticModel>(p, q_, threads_));
    return *models_.back();
  }

private:
  QuadratureConfig q_;
  unsigned threads_;
  std::vector<std::unique_ptr<AnalyticModel>> models_;
};

struct AnalyticValues {
  double pc = 0.0, ps = 0.0, stc = 0.0, nsee = 0.0;
  std::string error;
};

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite ") + what);
}

// Analytic values for every grid point. Models are built first, one per
// structure, then points are evaluated in parallel into fixed slots.
std::vector<AnalyticValues> analytic_all(const ExperimentConfig& cfg, unsigned threads,
                                         std::vector<double>* wall_ms) {
  const std::size_t n = cfg.grid_size();
  std::vector<AnalyticValues> out(n);
  std::vector<const AnalyticModel*> model(n, nullptr);
  ModelCache cache(cfg.quadrature, threads);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t0 = Clock::now();
    try {
      model[i] = &cache.get(cfg.point(i).params);
    } catch (const std::exception& e) {
      out[i].error = std::string("analytic: ") + e.what();
    }
    (*wall_ms)[i] += ms_since(t0);
  }
  parallel_chunks(n, threads, [&](std::size_t i) {
    if (!model[i]) return;
    const auto t0 = Clock::now();
    const SystemParams p = cfg.point(i).params;
    try {
      auto& v = out[i];
      v.pc = model[i]->connection(p, cfg.scheme, cfg.scenario);
      v.ps = model[i]->secrecy(p, cfg.scheme, cfg.scenario);
      check_finite(v.pc, "p_c");
      check_finite(v.ps, "p_s");
      v.stc = stc(v.pc, v.ps, p);
      v.nsee = nsee(v.stc, p, cfg.scheme);
    } catch (const std::exception& e) {
      out[i].error = std::string("analytic: ") + e.what();
    }
    (*wall_ms)[i] += ms_since(t0);
  });
  return out;
}

struct McValues {
  StcEstimate est;
  double nsee = 0.0;
  std::string error;
};

McValues mc_point(const ExperimentConfig& cfg, std::size_t i, unsigned threads) {
  McValues v;
  const SystemParams p = cfg.point(i).params;
  McSetup setup;
  setup.scheme = cfg.scheme;
  setup.scenario = cfg.scenario;
  setup.window_radius = cfg.window_radius;
  setup.seed = cfg.seed;
  setup.threads = threads;
  try {
    v.est = estimate_stc(p, setup, cfg.trials, cfg.trials_ps);
    v.nsee = nsee(v.est.stc, p, cfg.scheme);
  } catch (const std::exception& e) {
    v.error = std::string("mc: ") + e.what();
  }
  return v;
}

void append_status(Row& r, const std::string& err) {
  if (err.empty()) return;
  r.status = r.status == "ok" ? "error: " + err : r.status + "; " + err;
}

std::vector<Cell> axis_cells(const ExperimentConfig& cfg, std::size_t i) {
  std::vector<Cell> c;
  for (double v : cfg.point_values(i)) c.emplace_back(v);
  return c;
}

std::string config_summary(const std::string& what, std::size_t rows, std::size_t failed) {
  return what + ": " + std::to_string(rows) + " rows, " + std::to_string(failed) +
         " numeric failures";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

RunOutcome run_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  const std::size_t n = cfg.grid_size();
  const bool use_a = cfg.engine != Engine::MonteCarlo;
  const bool use_m = cfg.engine != Engine::Analytic;
  Table t;
  t.columns = cfg.axis_columns();
  if (use_a) t.columns.insert(t.columns.end(), {"p_c", "p_s", "stc", "nsee"});
  if (use_m)
    t.columns.insert(t.columns.end(), {"p_c_mc", "p_c_mc_hw95", "p_s_mc", "p_s_mc_hw95", "stc_mc",
                                       "nsee_mc"});

  std::vector<double> wall(n, 0.0);
  std::vector<AnalyticValues> av;
  if (use_a) av = analytic_all(cfg, opt.threads, &wall);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.cells = axis_cells(cfg, i);
    if (use_a) {
      const auto& a = av[i];
      if (a.error.empty()) r.cells.insert(r.cells.end(), {a.pc, a.ps, a.stc, a.nsee});
      else r.cells.insert(r.cells.end(), 4, std::nullopt);
      append_status(r, a.error);
    }
    if (use_m) {
      const auto t0 = Clock::now();
      const McValues m = mc_point(cfg, i, opt.threads);
      wall[i] += ms_since(t0);
      if (m.error.empty())
        r.cells.insert(r.cells.end(), {m.est.pc.mean, m.est.pc.half_width_95, m.est.ps.mean,
                                       m.est.ps.half_width_95, m.est.stc, m.nsee});
      else r.cells.insert(r.cells.end(), 6, std::nullopt);
      append_status(r, m.error);
    }
    if (r.status != "ok") ++failed;
    r.wall_ms = wall[i];
    t.rows.push_back(std::move(r));
  }
  RunOutcome out;
  out.output = render(cfg, Mode::Sweep, cfg.engine, t, opt.timing);
  out.exit_code = failed ? kNumericFail : kOk;
  out.summary = config_summary("sweep", n, failed);
  return out;
}

RunOutcome run_validate(const ExperimentConfig& cfg, const RunOptions& opt) {
  const std::size_t n = cfg.grid_size();
  Table t;
  t.columns = cfg.axis_columns();
  t.columns.insert(t.columns.end(), {"p_c", "p_c_mc", "p_c_mc_hw95", "p_c_delta", "p_s", "p_s_mc",
                                     "p_s_mc_hw95", "p_s_delta", "pass"});
  std::vector<double> wall(n, 0.0);
  const auto av = analytic_all(cfg, opt.threads, &wall);
  std::size_t failed = 0, outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Row r;
    r.cells = axis_cells(cfg, i);
    const auto t0 = Clock::now();
    const McValues m = mc_point(cfg, i, opt.threads);
    wall[i] += ms_since(t0);
    const auto& a = av[i];
    const bool ok_a = a.error.empty(), ok_m = m.error.empty();
    auto put = [&](double an, const Estimate& e) {
      r.cells.push_back(ok_a ? Cell(an) : std::nullopt);
      r.cells.push_back(ok_m ? Cell(e.mean) : std::nullopt);
      r.cells.push_back(ok_m ? Cell(e.half_width_95) : std::nullopt);
      r.cells.push_back(ok_a && ok_m ? Cell(std::abs(an - e.mean)) : std::nullopt);
    };
    put(a.pc, m.est.pc);
    put(a.ps, m.est.ps);
    append_status(r, a.error);
    append_status(r, m.error);
    if (ok_a && ok_m) {
      auto within = [&](double an, const Estimate& e) {
        return std::abs(an - e.mean) <= cfg.tolerance + 3.0 * e.half_width_95;
      };
      const bool pass = within(a.pc, m.est.pc) && within(a.ps, m.est.ps);
      r.cells.emplace_back(pass ? 1.0 : 0.0);
      if (!pass) ++outside;
    } else {
      r.cells.emplace_back(std::nullopt);
      ++failed;
    }
    r.wall_ms = wall[i];
    t.rows.push_back(std::move(r));
  }
  RunOutcome out;
  out.output = render(cfg, Mode::Validate, Engine::Both, t, opt.timing);
  out.exit_code = failed ? kNumericFail : outside ? kToleranceFail : kOk;
  out.summary = "validate: " + std::to_string(n) + " rows, " + std::to_string(outside) +
                " outside tolerance, " + std::to_string(failed) + " numeric failures";
  return out;
}

RunOutcome run_optimize(const ExperimentConfig& cfg, const RunOptions& opt) {
  const std::size_t n = cfg.grid_size();
  const std::size_t np = cfg.problems.size();
  std::vector<double> wall(n, 0.0);
  std::vector<const AnalyticModel*> model(n, nullptr);
  std::vector<std::string> build_error(n);
  ModelCache cache(cfg.quadrature, opt.threads);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      model[i] = &cache.get(cfg.point(i).params);
    } catch (const std::exception& e) {
      build_error[i] = e.what();
    }
  }
  SolverConfig solver = cfg.solver;
  solver.scenario = cfg.scenario;

  struct Slot {
    nlohmann::ordered_json j;
    bool failed = false;
  };
  std::vector<Slot> slots(n * np);
  parallel_chunks(n * np, opt.threads, [&](std::size_t c) {
    const std::size_t i = c / np;
    const std::string& prob = cfg.problems[c % np];
    auto& s = slots[c];
    s.j["problem"] = prob;
    const bool pj = prob == "p2" || prob == "p4";
    const Scheme scheme = pj ? Scheme::PJ : Scheme::SCJ;
    s.j["scheme"] = to_string(scheme);
    if (!model[i]) {
      s.failed = true;
      s.j["status"] = "error: analytic: " + build_error[i];
      return;
    }
    const PointState st = cfg.point(i);
    const auto t0 = Clock::now();
    try {
      OptimizationResult r;
      if (prob == "p1") r = solve_p1(*model[i], st.params, solver);
      else if (prob == "p2") r = solve_p2(*model[i], st.params, solver);
      else if (prob == "p3") r = solve_p3(*model[i], st.params, st.epsilon, solver);
      else r = solve_p4(*model[i], st.params, st.epsilon, solver);
      const SystemParams q = apply_argmax(st.params, r);
      if (prob == "p3" || prob == "p4") s.j["epsilon"] = st.epsilon;
      nlohmann::ordered_json arg;
      for (std::size_t k = 0; k < r.names.size(); ++k) arg[r.names[k]] = r.argmax[k];
      s.j["argmax"] = arg;
      s.j["stc"] = r.value;
      s.j["p_c"] = model[i]->connection(q, scheme, cfg.scenario);
      s.j["p_s"] = model[i]->secrecy(q, scheme, cfg.scenario);
      s.j["nsee"] = nsee(r.value, q, scheme);
      s.j["evaluations"] = r.trace.size();
      if (cfg.trace) {
        nlohmann::ordered_json tr = nlohmann::ordered_json::array();
        for (const auto& tp : r.trace) tr.push_back({{"x", tp.x}, {"value", tp.value}});
        s.j["trace"] = std::move(tr);
      }
      s.j["status"] = "ok";
    } catch (const ObjectiveError& e) {
      s.failed = true;
      s.j["status"] = std::string("error: ") + e.what();
      s.j["failed_at"] = e.at();
    } catch (const std::exception& e) {
      s.failed = true;
      s.j["status"] = std::string("error: ") + e.what();
    }
    if (opt.timing) s.j["wall_ms"] = ms_since(t0);
  });

  nlohmann::ordered_json doc;
  for (const auto& [k, v] : metadata(cfg, Mode::Optimize, Engine::Analytic)) doc["metadata"][k] = v;
  std::size_t failed = 0;
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  const auto names = cfg.axis_columns();
  for (std::size_t i = 0; i < n; ++i) {
    nlohmann::ordered_json pt;
    pt["point"] = nlohmann::ordered_json::object();
    const auto vals = cfg.point_values(i);
    for (std::size_t k = 0; k < names.size(); ++k) pt["point"][names[k]] = vals[k];
    pt["results"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < np; ++k) {
      pt["results"].push_back(slots[i * np + k].j);
      if (slots[i * np + k].failed) ++failed;
    }
    points.push_back(std::move(pt));
  }
  doc["points"] = std::move(points);
  RunOutcome out;
  out.output = doc.dump(2) + "\n";
  out.exit_code = failed ? kNumericFail : kOk;
  out.summary = "optimize: " + std::to_string(n) + " points x " + std::to_string(np) +
                " problems, " + std::to_string(failed) + " failures";
  return out;
}

RunOutcome run(Mode mode, const ExperimentConfig& cfg, const RunOptions& opt) {
  switch (mode) {
    case Mode::Validate: return run_validate(cfg, opt);
    case Mode::Sweep: return run_sweep(cfg, opt);
    case Mode::Optimize: return run_optimize(cfg, opt);
  }
  return {};
}

}  // namespace scj::cli
