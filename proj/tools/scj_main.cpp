// scj: validate, sweep and optimize experiments from a config file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scj/cli/config.hpp"
#include "scj/cli/runner.hpp"

namespace {

using namespace scj::cli;

template <class T>
std::optional<T> env_number(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != std::string(v).size()) throw std::invalid_argument(name);
    return static_cast<T>(x);
  } catch (const std::exception&) {
    throw ConfigError(name, std::string("environment value '") + v + "' is not an integer");
  }
}

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> engine;
  std::optional<double> tolerance;
  bool timing = false;
};

int execute(Mode mode, const Flags& f) {
  ExperimentConfig cfg;
  RunOptions opt;
  try {
    cfg = load_config(f.config);
    if (cfg.mode && *cfg.mode != mode)
      std::cerr << "note: config declares mode " << to_string(*cfg.mode) << ", running "
                << to_string(mode) << "\n";
    if (auto s = env_number<std::uint64_t>("SCJ_SEED")) cfg.seed = *s;
    if (f.seed) cfg.seed = *f.seed;
    if (auto t = env_number<unsigned>("SCJ_THREADS")) opt.threads = *t;
    if (f.threads) opt.threads = *f.threads;
    if (f.trials) {
      if (*f.trials < 1) throw ConfigError("--trials", "must be >= 1");
      cfg.trials = cfg.trials_ps = *f.trials;
    }
    if (f.engine) cfg.engine = parse_engine(*f.engine);
    if (f.tolerance) {
      if (!(*f.tolerance >= 0.0)) throw ConfigError("--tolerance", "must be >= 0");
      cfg.tolerance = *f.tolerance;
    }
    if (!f.out.empty()) cfg.out_path = f.out;
    if (mode == Mode::Optimize && cfg.format == Format::Csv && !cfg.out_path.empty() &&
        cfg.out_path.ends_with(".csv"))
      throw ConfigError("--out", "optimize writes a JSON report");
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  opt.timing = f.timing;

  RunOutcome r;
  try {
    r = run(mode, cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericFail;
  }
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    std::cout << r.output;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "config error: cannot write '" << cfg.out_path << "'\n";
      return kConfigError;
    }
    out << r.output;
  }
  std::cerr << r.summary << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sight-based cooperative jamming: analytic and Monte Carlo evaluation"};
  app.require_subcommand(1);
  Flags f;
  std::optional<Mode> chosen;

  auto add = [&](const char* name, const char* help, Mode mode) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "experiment config file")->required();
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--seed", f.seed, "master seed (env SCJ_SEED)");
    sub->add_option("--threads", f.threads, "worker threads, 0 = all cores (env SCJ_THREADS)");
    sub->add_option("--trials", f.trials, "Monte Carlo trials for both p_c and p_s");
    sub->add_option("--engine", f.engine, "analytic, mc or both")
        ->check(CLI::IsMember({"analytic", "mc", "montecarlo", "both"}));
    sub->add_option("--tolerance", f.tolerance, "validate tolerance on |delta|");
    sub->add_flag("--timing", f.timing, "add a wall_ms column");
    sub->callback([&chosen, mode] { chosen = mode; });
  };
  add("validate", "analytic vs Monte Carlo per grid point", Mode::Validate);
  add("sweep", "p_c, p_s, STC and NSEE over the grid", Mode::Sweep);
  add("optimize", "optimal jamming parameters per grid point (JSON)", Mode::Optimize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }
  return execute(*chosen, f);
}
