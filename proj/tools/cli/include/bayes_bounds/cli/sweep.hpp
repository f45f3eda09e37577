#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bayes_bounds/closed_bounds.hpp"
#include "bayes_bounds/montecarlo.hpp"
#include "bayes_bounds/weights.hpp"

namespace bayes_bounds::cli {

enum class BoundKind {
  wwb,
  bzb,
  mod_wwb,
  mod_bzb,
  bmzb_q1,
  bmzb_q2,
  bcrb,
  bcrb_q1,
  bcrb_q2,
  bmzb_ub,
  map_mse
};

struct BoundRequest {
  BoundKind kind = BoundKind::wwb;
  // Weight of mod_wwb / mod_bzb.
  std::optional<WeightFamily> weight;
  // delta of bmzb_q1, alpha of bmzb_q2.
  double parameter = 0.0;

  // CSV column name, e.g. "wwb", "mod_wwb(q1:0.5)", "bmzb_q1(0.001)".
  std::string label() const;
  // Value column followed by its argmax columns.
  std::vector<std::string> columns() const;
};

// "indicator", "q1:<delta>", "q2:<alpha>" or "table:<path>". The built-in
// shapes live on [0, 1]. Throws std::invalid_argument naming the violated
// constraint.
WeightFamily parse_weight_spec(std::string_view spec);

// A bound name, optionally with its parameter: "wwb", "mod_bzb",
// "bmzb_q1:0.25", "bmzb_q2:2", "bcrb_q1", ... . mod_* take `weight`;
// bmzb_q1 / bmzb_q2 without a parameter take it from a matching `weight`.
BoundRequest parse_bound_spec(std::string_view spec, const WeightFamily& weight);

struct SweepConfig {
  int n_samples = 32;
  double snr_start_db = -15.0;
  double snr_stop_db = 25.0;
  double snr_step_db = 0.5;
  std::vector<BoundRequest> bounds;
  HsGrid grid = HsGrid::standard();
  McConfig mc{};
  // Empty: no file is written by run_sweep_to_file.
  std::string output_path;

  // Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
  std::vector<double> snr_points() const;
};

struct SweepRow {
  double snr_db = 0.0;
  // One cell per non-snr column; empty when the evaluation failed.
  std::vector<std::optional<double>> cells;
};

struct SweepResult {
  // Column names after snr_db.
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  std::size_t failed_cells = 0;

  // Index into columns, if present.
  std::optional<std::size_t> column_index(std::string_view name) const;
  // True iff every requested bound failed at every SNR.
  bool all_failed() const;
};

// Evaluates every requested bound at every SNR point (ascending). Failed
// cells stay empty and a one-line diagnostic goes to `diag` when given.
SweepResult run_sweep(const SweepConfig& cfg, std::ostream* diag = nullptr);

enum class Preset { fig1, fig2, fig3 };

std::optional<Preset> parse_preset(std::string_view name);
// Figure presets, N = 32 over -15..25 dB. with_mc adds the MAP MSE column.
SweepConfig preset_config(Preset preset, bool with_mc = false);

}  // namespace bayes_bounds::cli
