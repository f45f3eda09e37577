#include "bayes_bounds/cli/plot.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace bayes_bounds::cli {

namespace {

bool is_arg_column(const std::vector<std::string>& columns, std::size_t i) {
  if (columns[i] == "map_se") return true;
  for (std::size_t j = 0; j < i; ++j) {
    for (const char* suffix : {"_h", "_s", "_delta", "_alpha", "_family"})
      if (columns[i] == columns[j] + suffix) return true;
  }
  return false;
}

// Single-quoted gnuplot string.
std::string quoted(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

}  // namespace

std::string emit_plot_script(const SweepResult& result, const std::string& csv_path,
                             const PlotStyle& style) {
  if (result.rows.empty()) throw std::invalid_argument("emit_plot_script: no rows");
  std::string s;
  s += "set datafile separator ','\n";
  s += "set datafile missing ''\n";
  s += "set key autotitle columnhead\n";
  if (style.log_y) s += "set logscale y\n";
  s += "set xlabel 'SNR (dB)'\n";
  s += "set ylabel 'MSE'\n";
  s += "set grid\n";
  s += "set key bottom left noenhanced\n";
  if (!style.title.empty()) s += fmt::format("set title {} noenhanced\n", quoted(style.title));
  if (!style.image_path.empty()) {
    s += "set terminal pngcairo size 1000,700\n";
    s += fmt::format("set output {}\n", quoted(style.image_path));
  }

  std::vector<std::string> curves;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (is_arg_column(result.columns, i)) continue;
    const bool any = std::any_of(result.rows.begin(), result.rows.end(),
                                 [i](const SweepRow& r) { return r.cells[i].has_value(); });
    if (!any) {
      s += fmt::format("# skipped {}: no values\n", result.columns[i]);
      continue;
    }
    // gnuplot columns are 1-based and column 1 is snr_db.
    curves.push_back(fmt::format("{} using 1:{} with lines title {}",
                                 curves.empty() ? quoted(csv_path) : std::string("''"), i + 2,
                                 quoted(result.columns[i])));
  }
  if (curves.empty()) {
    s += "# nothing to plot\n";
    return s;
  }
  s += "plot ";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    s += curves[k];
    s += k + 1 < curves.size() ? ", \\\n     " : "\n";
  }
  return s;
}

}  // namespace bayes_bounds::cli
