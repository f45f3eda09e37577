#include "bayes_bounds/cli/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace bayes_bounds::cli {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0')
    throw std::runtime_error(fmt::format("csv line {}: bad number '{}'", line_no, cell));
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "snr_db";
  for (const auto& c : result.columns) out << ',' << c;
  out << '\n';
  for (const auto& row : result.rows) {
    out << fmt::format("{:.17g}", row.snr_db);
    for (const auto& cell : row.cells) {
      out << ',';
      if (cell) out << fmt::format("{:.17g}", *cell);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const SweepResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, result);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  auto header = split(line);
  if (header.empty() || header.front() != "snr_db")
    throw std::runtime_error("csv: header must start with snr_db");
  result.columns.assign(header.begin() + 1, header.end());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw std::runtime_error(fmt::format("csv line {}: expected {} cells, got {}", line_no,
                                           header.size(), cells.size()));
    SweepRow row;
    row.snr_db = parse_cell(cells.front(), line_no);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].empty())
        row.cells.emplace_back(std::nullopt);
      else
        row.cells.emplace_back(parse_cell(cells[i], line_no));
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

SweepResult read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace bayes_bounds::cli
