#pragma once

#include <string>

#include "bayes_bounds/cli/sweep.hpp"

namespace bayes_bounds::cli {

struct PlotStyle {
  std::string title;
  // Image written by the script; empty keeps gnuplot's default terminal.
  std::string image_path;
  bool log_y = true;
};

// gnuplot script drawing every bound column of `result` against snr_db from
// the CSV at csv_path. Argmax and standard-error columns are not drawn;
// columns without any value are skipped with a comment. Throws
// std::invalid_argument on an empty result.
std::string emit_plot_script(const SweepResult& result, const std::string& csv_path,
                             const PlotStyle& style = {});

}  // namespace bayes_bounds::cli
