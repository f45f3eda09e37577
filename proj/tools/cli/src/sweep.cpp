#include "bayes_bounds/cli/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "bayes_bounds/parallel.hpp"

namespace bayes_bounds::cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(fmt::format("{}: '{}' is not a finite number", what, s));
  return v;
}

struct KindName {
  BoundKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {BoundKind::wwb, "wwb"},         {BoundKind::bzb, "bzb"},
    {BoundKind::mod_wwb, "mod_wwb"}, {BoundKind::mod_bzb, "mod_bzb"},
    {BoundKind::bmzb_q1, "bmzb_q1"}, {BoundKind::bmzb_q2, "bmzb_q2"},
    {BoundKind::bcrb, "bcrb"},       {BoundKind::bcrb_q1, "bcrb_q1"},
    {BoundKind::bcrb_q2, "bcrb_q2"}, {BoundKind::bmzb_ub, "bmzb_ub"},
    {BoundKind::map_mse, "map_mse"}};

std::string_view kind_name(BoundKind kind) {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "?";
}

using Cells = std::vector<std::optional<double>>;

double arg_or_nan(const BoundResult& r, const std::string& key) {
  auto it = r.arg.find(key);
  return it == r.arg.end() ? std::nan("") : it->second;
}

std::optional<double> present(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

}  // namespace

//------------------------------------------------------------------------------

std::string BoundRequest::label() const {
  switch (kind) {
    case BoundKind::mod_wwb:
    case BoundKind::mod_bzb:
      return fmt::format("{}({})", kind_name(kind), weight ? weight->label() : "indicator");
    case BoundKind::bmzb_q1:
    case BoundKind::bmzb_q2:
      return fmt::format("{}({})", kind_name(kind), parameter);
    default:
      return std::string(kind_name(kind));
  }
}

std::vector<std::string> BoundRequest::columns() const {
  const std::string l = label();
  switch (kind) {
    case BoundKind::wwb:
    case BoundKind::mod_wwb:
      return {l, l + "_h", l + "_s"};
    case BoundKind::bzb:
    case BoundKind::mod_bzb:
      return {l, l + "_h"};
    case BoundKind::bcrb_q1:
      return {l, l + "_delta"};
    case BoundKind::bcrb_q2:
      return {l, l + "_alpha"};
    case BoundKind::bcrb:
      return {l, l + "_family", l + "_delta", l + "_alpha"};
    case BoundKind::map_mse:
      return {"map_mse", "map_se"};
    default:
      return {l};
  }
}

WeightFamily parse_weight_spec(std::string_view spec) {
  if (spec == "indicator") return WeightFamily::indicator();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument(fmt::format(
        "weight '{}': expected indicator, q1:<delta>, q2:<alpha> or table:<path>", spec));
  const std::string_view head = spec.substr(0, colon);
  const std::string_view tail = spec.substr(colon + 1);
  if (head == "q1") return WeightFamily::sine_taper(parse_number(tail, "q1 delta"));
  if (head == "q2") return WeightFamily::power_taper(parse_number(tail, "q2 alpha"));
  if (head == "table") return load_weight_table(std::string(tail));
  throw std::invalid_argument(fmt::format("weight '{}': unknown family '{}'", spec, head));
}

BoundRequest parse_bound_spec(std::string_view spec, const WeightFamily& weight) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::optional<std::string_view> param =
      colon == std::string_view::npos ? std::nullopt : std::optional(spec.substr(colon + 1));
  const auto* entry = std::find_if(std::begin(kKindNames), std::end(kKindNames),
                                   [&](const KindName& k) { return k.name == name; });
  if (entry == std::end(kKindNames))
    throw std::invalid_argument(fmt::format("unknown bound '{}'", name));

  BoundRequest req;
  req.kind = entry->kind;
  switch (req.kind) {
    case BoundKind::mod_wwb:
    case BoundKind::mod_bzb:
      req.weight = param ? parse_weight_spec(*param) : weight;
      break;
    case BoundKind::bmzb_q1:
      if (param)
        req.parameter = parse_number(*param, "bmzb_q1 delta");
      else if (weight.kind() == WeightKind::sine_taper)
        req.parameter = weight.parameter();
      else
        throw std::invalid_argument("bmzb_q1 needs a delta: bmzb_q1:<delta> or --weight q1:<delta>");
      if (!(req.parameter > 0.0 && req.parameter <= 0.5))
        throw std::invalid_argument("bmzb_q1 requires 0 < delta <= 0.5");
      break;
    case BoundKind::bmzb_q2:
      if (param)
        req.parameter = parse_number(*param, "bmzb_q2 alpha");
      else if (weight.kind() == WeightKind::power_taper)
        req.parameter = weight.parameter();
      else
        throw std::invalid_argument("bmzb_q2 needs an alpha: bmzb_q2:<alpha> or --weight q2:<alpha>");
      if (!(req.parameter > 1.5)) throw std::invalid_argument("bmzb_q2 requires alpha > 3/2");
      break;
    default:
      if (param) throw std::invalid_argument(fmt::format("bound '{}' takes no parameter", name));
  }
  return req;
}

//------------------------------------------------------------------------------

void SweepConfig::validate() const {
  if (n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
  if (!std::isfinite(snr_start_db) || !std::isfinite(snr_stop_db) || !std::isfinite(snr_step_db))
    throw std::invalid_argument("SNR range must be finite");
  if (!(snr_step_db > 0.0)) throw std::invalid_argument("snr_step_db must be > 0");
  if (!(snr_start_db <= snr_stop_db))
    throw std::invalid_argument("snr_start_db must be <= snr_stop_db");
  if (bounds.empty()) throw std::invalid_argument("at least one bound must be requested");
  grid.validate();
  mc.validate();
  std::set<std::string> seen;
  for (const auto& b : bounds) {
    if (!seen.insert(b.label()).second)
      throw std::invalid_argument(fmt::format("bound '{}' requested twice", b.label()));
    if (b.weight && !(b.weight->support() == UniformPrior::unit()))
      throw std::invalid_argument("mod_wwb / mod_bzb weights must live on [0, 1]");
  }
}

std::vector<double> SweepConfig::snr_points() const {
  const auto count = static_cast<std::size_t>(
      std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Round away accumulated binary noise such as -14.899999999999999.
    const double x = snr_start_db + static_cast<double>(i) * snr_step_db;
    out.push_back(std::round(x * 1e9) / 1e9);
  }
  return out;
}

std::optional<std::size_t> SweepResult::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  return std::nullopt;
}

bool SweepResult::all_failed() const {
  for (const auto& row : rows)
    for (const auto& c : row.cells)
      if (c) return false;
  return true;
}

//------------------------------------------------------------------------------

SweepResult run_sweep(const SweepConfig& cfg, std::ostream* diag) {
  cfg.validate();
  const std::vector<double> snrs = cfg.snr_points();

  // Shift integrals depend only on the weight and h: build them once.
  std::map<std::size_t, ShiftIntegralTable> tables;
  for (std::size_t i = 0; i < cfg.bounds.size(); ++i) {
    const auto& b = cfg.bounds[i];
    if (b.kind != BoundKind::mod_wwb && b.kind != BoundKind::mod_bzb) continue;
    const WeightFamily w = b.weight.value_or(WeightFamily::indicator());
    tables.emplace(i, w.kind() == WeightKind::indicator
                          ? ShiftIntegralTable::indicator(cfg.grid.h_values)
                          : ShiftIntegralTable(w, cfg.grid.h_values));
  }

  SweepResult result;
  for (const auto& b : cfg.bounds) {
    const auto cols = b.columns();
    result.columns.insert(result.columns.end(), cols.begin(), cols.end());
  }
  result.rows.resize(snrs.size());
  std::vector<std::vector<std::string>> messages(snrs.size());

  parallel_for(snrs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const ToneModel model = ToneModel::from_db(cfg.n_samples, snrs[p]);
      SweepRow& row = result.rows[p];
      row.snr_db = snrs[p];
      for (std::size_t i = 0; i < cfg.bounds.size(); ++i) {
        const BoundRequest& b = cfg.bounds[i];
        const std::size_t width = b.columns().size();
        Cells cells;
        try {
          switch (b.kind) {
            case BoundKind::wwb: {
              const auto r = wwb_sup(model, cfg.grid);
              cells = {r.value, r.arg.at("h"), r.arg.at("s")};
              break;
            }
            case BoundKind::bzb: {
              const auto r = bzb_sup(model, cfg.grid.h_values);
              cells = {r.value, r.arg.at("h")};
              break;
            }
            case BoundKind::mod_wwb: {
              const auto r = mod_wwb_sup(model, tables.at(i), cfg.grid.s_values);
              cells = {r.value, r.arg.at("h"), r.arg.at("s")};
              break;
            }
            case BoundKind::mod_bzb: {
              const auto r = mod_bzb_sup(model, tables.at(i));
              cells = {r.value, r.arg.at("h")};
              break;
            }
            case BoundKind::bmzb_q1:
              cells = {bmzb_q1(model, b.parameter)};
              break;
            case BoundKind::bmzb_q2:
              cells = {bmzb_q2(model, b.parameter)};
              break;
            case BoundKind::bmzb_ub:
              cells = {bmzb_ub(model)};
              break;
            case BoundKind::bcrb_q1: {
              const auto r = bcrb_q1_sup(model);
              cells = {r.value, r.arg.at("delta")};
              break;
            }
            case BoundKind::bcrb_q2: {
              const auto r = bcrb_q2_sup(model);
              cells = {r.value, r.arg.at("alpha")};
              break;
            }
            case BoundKind::bcrb: {
              const auto r = bcrb_sup(model);
              cells = {r.value, r.arg.at("family"), present(arg_or_nan(r, "delta")),
                       present(arg_or_nan(r, "alpha"))};
              break;
            }
            case BoundKind::map_mse: {
              const auto r = simulate_map_mse(model, cfg.mc);
              cells = {r.mse, r.std_error};
              break;
            }
          }
          if (!cells.front() || !std::isfinite(*cells.front()))
            throw std::runtime_error("non-finite value");
        } catch (const std::exception& e) {
          cells.assign(width, std::nullopt);
          messages[p].push_back(fmt::format("snr_db={} {}: {}", snrs[p], b.label(), e.what()));
        }
        row.cells.insert(row.cells.end(), cells.begin(), cells.end());
      }
    }
  });

  for (std::size_t p = 0; p < snrs.size(); ++p) {
    result.failed_cells += messages[p].size();
    if (diag)
      for (const auto& m : messages[p]) *diag << m << '\n';
  }
  return result;
}

//------------------------------------------------------------------------------

std::optional<Preset> parse_preset(std::string_view name) {
  if (name == "fig1") return Preset::fig1;
  if (name == "fig2") return Preset::fig2;
  if (name == "fig3") return Preset::fig3;
  return std::nullopt;
}

SweepConfig preset_config(Preset preset, bool with_mc) {
  SweepConfig cfg;
  cfg.n_samples = 32;
  cfg.snr_start_db = -15.0;
  cfg.snr_stop_db = 25.0;
  cfg.snr_step_db = 0.5;
  auto add = [&cfg](BoundKind kind, double parameter = 0.0,
                    std::optional<WeightFamily> w = std::nullopt) {
    BoundRequest r;
    r.kind = kind;
    r.parameter = parameter;
    r.weight = std::move(w);
    cfg.bounds.push_back(std::move(r));
  };
  switch (preset) {
    case Preset::fig1:
      add(BoundKind::wwb);
      add(BoundKind::bzb);
      for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) add(BoundKind::bmzb_q1, delta);
      add(BoundKind::bmzb_ub);
      break;
    case Preset::fig2:
      add(BoundKind::bcrb_q1);
      add(BoundKind::bcrb_q2);
      add(BoundKind::bcrb);
      add(BoundKind::bmzb_ub);
      break;
    case Preset::fig3:
      cfg.snr_step_db = 0.1;
      add(BoundKind::wwb);
      add(BoundKind::bzb);
      add(BoundKind::mod_wwb, 0.0, WeightFamily::sine_taper(0.5));
      add(BoundKind::mod_wwb, 0.0, WeightFamily::power_taper(2.0));
      add(BoundKind::mod_bzb, 0.0, WeightFamily::sine_taper(0.5));
      add(BoundKind::mod_bzb, 0.0, WeightFamily::power_taper(2.0));
      break;
  }
  if (with_mc) add(BoundKind::map_mse);
  return cfg;
}

}  // namespace bayes_bounds::cli
