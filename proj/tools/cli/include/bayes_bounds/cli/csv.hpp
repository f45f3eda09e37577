#pragma once

#include <filesystem>
#include <iosfwd>

#include "bayes_bounds/cli/sweep.hpp"

namespace bayes_bounds::cli {

// Header "snr_db,<columns>", then one row per SNR point. Numbers carry 17
// significant digits so that read_csv reproduces them exactly; failed cells
// are empty.
void write_csv(std::ostream& out, const SweepResult& result);
void write_csv(const std::filesystem::path& path, const SweepResult& result);

// Inverse of write_csv. Throws std::runtime_error on malformed input.
SweepResult read_csv(std::istream& in);
SweepResult read_csv(const std::filesystem::path& path);

}  // namespace bayes_bounds::cli
