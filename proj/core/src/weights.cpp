#include "bayes_bounds/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bayes_bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVanishingTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_number(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

WeightFamily WeightFamily::indicator(UniformPrior support) {
  return WeightFamily(Indicator{}, std::move(support));
}

WeightFamily WeightFamily::sine_taper(double delta, UniformPrior support) {
  if (!(delta > 0.0 && delta <= 0.5))
    throw std::invalid_argument("sine taper requires 0 < delta <= 0.5, got " + format_number(delta));
  return WeightFamily(SineTaper{delta}, std::move(support));
}

WeightFamily WeightFamily::power_taper(double alpha, UniformPrior support) {
  if (!(alpha > 1.5) || !std::isfinite(alpha))
    throw std::invalid_argument("power taper requires alpha > 3/2, got " + format_number(alpha));
  return WeightFamily(PowerTaper{alpha}, std::move(support));
}

WeightFamily WeightFamily::tabulated(std::vector<WeightKnot> knots, UniformPrior support) {
  if (knots.size() < 2) throw std::invalid_argument("tabulated weight needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].theta) || !std::isfinite(knots[i].q) || knots[i].q < 0.0)
      throw std::invalid_argument("tabulated weight: knots must be finite with q >= 0");
    if (i > 0 && !(knots[i - 1].theta < knots[i].theta))
      throw std::invalid_argument("tabulated weight: theta must be strictly increasing");
  }
  return WeightFamily(Tabulated{std::move(knots)}, std::move(support));
}

WeightKind WeightFamily::kind() const {
  return std::visit(Overloaded{[](const Indicator&) { return WeightKind::indicator; },
                               [](const SineTaper&) { return WeightKind::sine_taper; },
                               [](const PowerTaper&) { return WeightKind::power_taper; },
                               [](const Tabulated&) { return WeightKind::tabulated; }},
                    shape_);
}

double WeightFamily::parameter() const {
  return std::visit(Overloaded{[](const SineTaper& s) { return s.delta; },
                               [](const PowerTaper& p) { return p.alpha; },
                               [](const auto&) { return std::numeric_limits<double>::quiet_NaN(); }},
                    shape_);
}

std::string WeightFamily::label() const {
  return std::visit(Overloaded{[](const Indicator&) { return std::string("indicator"); },
                               [](const SineTaper& s) { return "q1:" + format_number(s.delta); },
                               [](const PowerTaper& p) { return "q2:" + format_number(p.alpha); },
                               [](const Tabulated&) { return std::string("table"); }},
                    shape_);
}

double WeightFamily::eval(double theta) const {
  const auto index = support_.interval_index(theta);
  if (!index) return 0.0;
  const Interval iv = support_.intervals()[*index];
  const double u = (theta - iv.lo) / iv.length();
  return std::visit(
      Overloaded{
          [](const Indicator&) { return 1.0; },
          [u](const SineTaper& s) {
            if (u <= s.delta) return 0.5 * (1.0 + std::sin(kPi * (u / s.delta - 0.5)));
            if (u < 1.0 - s.delta) return 1.0;
            return 0.5 * (1.0 - std::sin(kPi * ((u - 1.0 + s.delta) / s.delta - 0.5)));
          },
          [u](const PowerTaper& p) { return std::pow(u * (1.0 - u), p.alpha - 1.0); },
          [theta](const Tabulated& t) {
            const auto& k = t.knots;
            if (theta < k.front().theta || theta > k.back().theta) return 0.0;
            auto hi = std::upper_bound(k.begin(), k.end(), theta,
                                       [](double x, const WeightKnot& kn) { return x < kn.theta; });
            if (hi == k.end()) return k.back().q;
            auto lo = hi - 1;
            const double w = (theta - lo->theta) / (hi->theta - lo->theta);
            return lo->q + w * (hi->q - lo->q);
          }},
      shape_);
}

double WeightFamily::deriv(double theta) const {
  const auto index = support_.interval_index(theta);
  if (!index) return 0.0;
  const Interval iv = support_.intervals()[*index];
  // Right-hand derivative: nothing to the right of the last support point.
  if (theta >= iv.hi) return 0.0;
  const double scale = 1.0 / iv.length();
  const double u = (theta - iv.lo) * scale;
  return std::visit(
      Overloaded{
          [](const Indicator&) { return 0.0; },
          [u, scale](const SineTaper& s) {
            const double ramp = 0.5 * kPi / s.delta * scale;
            if (u < s.delta) return ramp * std::cos(kPi * (u / s.delta - 0.5));
            if (u < 1.0 - s.delta) return 0.0;
            return -ramp * std::cos(kPi * ((u - 1.0 + s.delta) / s.delta - 0.5));
          },
          [u, scale](const PowerTaper& p) {
            const double a1 = p.alpha - 1.0;
            if (u == 0.0 && p.alpha < 2.0) return std::numeric_limits<double>::infinity();
            return a1 * std::pow(u * (1.0 - u), a1 - 1.0) * (1.0 - 2.0 * u) * scale;
          },
          [theta](const Tabulated& t) {
            const auto& k = t.knots;
            if (theta < k.front().theta || theta >= k.back().theta) return 0.0;
            auto hi = std::upper_bound(k.begin(), k.end(), theta,
                                       [](double x, const WeightKnot& kn) { return x < kn.theta; });
            auto lo = hi - 1;
            return (hi->q - lo->q) / (hi->theta - lo->theta);
          }},
      shape_);
}

WeightSample WeightFamily::at_end_offset(std::size_t interval, double offset,
                                         bool from_hi) const {
  const auto intervals = support_.intervals();
  if (interval >= intervals.size()) throw std::out_of_range("at_end_offset: no such interval");
  const Interval iv = intervals[interval];
  if (!(offset >= 0.0 && offset <= 0.5 * iv.length()))
    throw std::invalid_argument("at_end_offset: offset must lie in [0, half the interval length]");
  const double scale = 1.0 / iv.length();
  const double u = offset * scale;
  // Both tapers are mirror symmetric, so the upper end is the lower one with q' negated.
  const double sign = from_hi ? -1.0 : 1.0;
  return std::visit(
      Overloaded{
          [](const Indicator&) { return WeightSample{1.0, 0.0}; },
          [&](const SineTaper& s) {
            if (u >= s.delta) return WeightSample{1.0, 0.0};
            const double phase = kPi * (u / s.delta - 0.5);
            return WeightSample{0.5 * (1.0 + std::sin(phase)),
                                sign * 0.5 * kPi / s.delta * scale * std::cos(phase)};
          },
          [&](const PowerTaper& p) {
            const double a1 = p.alpha - 1.0;
            const double base = u * (1.0 - u);
            if (u == 0.0)
              return WeightSample{0.0, p.alpha < 2.0 ? sign * std::numeric_limits<double>::infinity()
                                                     : (p.alpha == 2.0 ? sign * scale : 0.0)};
            return WeightSample{std::pow(base, a1),
                                sign * a1 * std::pow(base, a1 - 1.0) * (1.0 - 2.0 * u) * scale};
          },
          [&](const Tabulated&) {
            const double theta = from_hi ? iv.hi - offset : iv.lo + offset;
            return WeightSample{eval(theta), deriv(theta)};
          }},
      shape_);
}

std::vector<double> WeightFamily::breakpoints() const {
  std::vector<double> points;
  for (const auto& iv : support_.intervals()) {
    points.push_back(iv.lo);
    points.push_back(iv.hi);
    if (const auto* s = std::get_if<SineTaper>(&shape_)) {
      points.push_back(iv.lo + s->delta * iv.length());
      points.push_back(iv.hi - s->delta * iv.length());
    }
  }
  if (const auto* t = std::get_if<Tabulated>(&shape_)) {
    for (const auto& k : t->knots)
      if (support_.contains(k.theta)) points.push_back(k.theta);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool WeightFamily::endpoint_vanishing() const {
  return std::visit(Overloaded{[](const Indicator&) { return false; },
                               [](const SineTaper&) { return true; },
                               [](const PowerTaper&) { return true; },
                               [this](const Tabulated&) {
                                 for (const auto& iv : support_.intervals())
                                   if (eval(iv.lo) > kVanishingTolerance ||
                                       eval(iv.hi) > kVanishingTolerance)
                                     return false;
                                 return true;
                               }},
                    shape_);
}

double WeightFamily::endpoint_grading() const {
  if (const auto* p = std::get_if<PowerTaper>(&shape_)) {
    // (q')^2 ~ u^(2 alpha - 4); theta = t^k turns it into ~ t^3.
    return std::max(1.0, 4.0 / (2.0 * p->alpha - 3.0));
  }
  return 1.0;
}

//------------------------------------------------------------------------------

std::vector<WeightKnot> parse_weight_table(std::istream& in) {
  std::vector<WeightKnot> knots;
  std::string line;
  int line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw std::invalid_argument("weight table line " + std::to_string(line_no) +
                                  ": expected two comma-separated columns");
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    char* end_a = nullptr;
    char* end_b = nullptr;
    const double theta = std::strtod(a.c_str(), &end_a);
    const double q = std::strtod(b.c_str(), &end_b);
    auto trailing_ok = [](const char* p) {
      while (*p == ' ' || *p == '\t') ++p;
      return *p == '\0';
    };
    const bool numeric = end_a != a.c_str() && end_b != b.c_str() && trailing_ok(end_a) &&
                         trailing_ok(end_b);
    if (!numeric) {
      if (!seen_row && knots.empty()) {
        seen_row = true;  // header
        continue;
      }
      throw std::invalid_argument("weight table line " + std::to_string(line_no) +
                                  ": non-numeric value");
    }
    seen_row = true;
    if (!knots.empty() && !(knots.back().theta < theta))
      throw std::invalid_argument("weight table line " + std::to_string(line_no) +
                                  ": theta must be strictly increasing");
    knots.push_back({theta, q});
  }
  return knots;
}

WeightFamily load_weight_table(const std::filesystem::path& path, UniformPrior support) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weight table " + path.string());
  return WeightFamily::tabulated(parse_weight_table(in), std::move(support));
}

}  // namespace bayes_bounds
