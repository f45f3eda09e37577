#include "bayes_bounds/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bayes_bounds/cli/csv.hpp"
#include "bayes_bounds/cli/plot.hpp"
#include "bayes_bounds/cli/sweep.hpp"
#include "bayes_bounds/parallel.hpp"

namespace bayes_bounds::cli {

namespace {

struct Options {
  int n_samples = 32;
  std::optional<double> snr_db;
  std::optional<double> snr_start_db;
  std::optional<double> snr_stop_db;
  std::optional<double> snr_step_db;
  std::string weight = "indicator";
  std::optional<double> h_step;
  std::optional<double> s_step;
  std::size_t trials = McConfig{}.trials;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string plot_path;
  bool with_mc = false;
  std::vector<std::string> bounds;
  std::string figure;
};

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--n-samples", o.n_samples, "Number of samples N")->capture_default_str();
  auto* single = sub.add_option("--snr-db", o.snr_db, "Single SNR point (dB)");
  sub.add_option("--snr-start-db", o.snr_start_db, "First SNR of the sweep (dB)")->excludes(single);
  sub.add_option("--snr-stop-db", o.snr_stop_db, "Last SNR of the sweep (dB)")->excludes(single);
  sub.add_option("--snr-step-db", o.snr_step_db, "SNR step (dB)")->excludes(single);
  sub.add_option("--weight", o.weight, "indicator | q1:<delta> | q2:<alpha> | table:<path>")
      ->capture_default_str();
  sub.add_option("--h-step", o.h_step, "Test point spacing of the (h, s) grid");
  sub.add_option("--s-step", o.s_step, "Exponent spacing of the (h, s) grid");
  sub.add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  sub.add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
  sub.add_option("--out", o.out_path, "CSV output path (default: stdout)");
  sub.add_option("--emit-plot", o.plot_path, "Also write a gnuplot script to this path");
}

// Applies the shared flags on top of a base configuration.
SweepConfig configure(SweepConfig cfg, const Options& o) {
  cfg.n_samples = o.n_samples;
  if (o.snr_db) {
    cfg.snr_start_db = cfg.snr_stop_db = *o.snr_db;
    cfg.snr_step_db = 1.0;
  }
  if (o.snr_start_db) cfg.snr_start_db = *o.snr_start_db;
  if (o.snr_stop_db) cfg.snr_stop_db = *o.snr_stop_db;
  if (o.snr_step_db) cfg.snr_step_db = *o.snr_step_db;
  if (o.h_step || o.s_step) cfg.grid = HsGrid::uniform(o.h_step.value_or(1e-3), o.s_step.value_or(1e-2));
  cfg.mc.trials = o.trials;
  cfg.mc.seed = o.seed;
  if (!o.plot_path.empty() && o.out_path.empty())
    throw std::invalid_argument("--emit-plot requires --out");
  cfg.output_path = o.out_path;
  cfg.validate();
  return cfg;
}

void apply_thread_cap() {
  const char* env = std::getenv("BAYES_BOUNDS_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0)
    throw std::invalid_argument("BAYES_BOUNDS_THREADS must be a non-negative integer");
  set_max_threads(static_cast<unsigned>(v));
}

int emit(const SweepResult& result, const SweepConfig& cfg, const Options& o,
         const std::string& title, std::ostream& out) {
  if (cfg.output_path.empty()) {
    write_csv(out, result);
  } else {
    write_csv(std::filesystem::path(cfg.output_path), result);
  }
  if (!o.plot_path.empty()) {
    PlotStyle style;
    style.title = title;
    style.image_path = std::filesystem::path(o.plot_path).replace_extension(".png").string();
    std::ofstream script(o.plot_path);
    script << emit_plot_script(result, cfg.output_path, style);
    if (!script) throw std::runtime_error("cannot write " + o.plot_path);
  }
  return result.all_failed() ? kExitComputeFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bayesian lower bounds on the MSE of single-tone frequency estimation",
               "bayes-bounds"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "Evaluate bounds over an SNR range");
  add_common(*sweep, o);
  sweep
      ->add_option("bounds", o.bounds,
                   "wwb bzb mod_wwb mod_bzb bmzb_q1[:delta] bmzb_q2[:alpha] bcrb bcrb_q1 "
                   "bcrb_q2 bmzb_ub map_mse")
      ->required();

  auto* mc = app.add_subcommand("montecarlo", "Simulated MSE of the MAP estimator");
  add_common(*mc, o);

  auto* figure = app.add_subcommand("figure", "Figure presets");
  add_common(*figure, o);
  figure->add_option("name", o.figure, "fig1 | fig2 | fig3")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  figure->add_flag("--with-mc", o.with_mc, "Add the simulated MAP MSE");

  auto* bound = app.add_subcommand("bound", "Evaluate one bound at one SNR");
  add_common(*bound, o);
  bound->add_option("bound", o.bounds, "Bound name, as for sweep")->required()->expected(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  SweepConfig cfg;
  std::string title;
  try {
    apply_thread_cap();
    const WeightFamily weight = parse_weight_spec(o.weight);
    if (*figure) {
      title = o.figure;
      cfg = configure(preset_config(*parse_preset(o.figure), o.with_mc), o);
    } else {
      SweepConfig base;
      if (*mc) {
        base.bounds.push_back(parse_bound_spec("map_mse", weight));
      } else {
        if (*bound && !o.snr_db) throw std::invalid_argument("bound requires --snr-db");
        for (const auto& b : o.bounds) base.bounds.push_back(parse_bound_spec(b, weight));
      }
      cfg = configure(std::move(base), o);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const SweepResult result = run_sweep(cfg, &err);
    if (*bound) {
      const SweepRow& row = result.rows.front();
      for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (row.cells[i]) out << fmt::format("{} = {:.17g}\n", result.columns[i], *row.cells[i]);
      }
      return result.all_failed() ? kExitComputeFailure : kExitOk;
    }
    return emit(result, cfg, o, title, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputeFailure;
  }
}

}  // namespace bayes_bounds::cli
