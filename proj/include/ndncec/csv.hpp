#pragma once

#include "ndncec/sweep.hpp"

#include <iosfwd>
#include <string>

namespace ndncec {

// Deterministic column order, header row, one file per sweep. Re-running
// with the same seed produces byte-identical files.
void write_sweep_csv(const SweepResult& result, std::ostream& os);
void write_rtt_csv(const SweepResult& result, std::ostream& os);

void emit_csv(const SweepResult& result, const std::string& out_dir);

std::string sweep_csv_path(const std::string& out_dir);
std::string rtt_csv_path(const std::string& out_dir);

} // namespace ndncec
