#include "osum/summary.hpp"

#include <cstdio>

namespace osum {

std::string to_csv_row(const RunSummary& row) {
  char time_text[64];
  std::snprintf(time_text, sizeof(time_text), "%.3f", row.time_ms);
  std::string out;
  out += row.algo;
  out += ',';
  out += row.xi;
  out += ',';
  out += std::to_string(row.patterns);
  out += ',';
  out += std::to_string(row.candidates);
  out += ',';
  out += time_text;
  out += ',';
  out += std::to_string(row.peak_mem_bytes);
  out += ',';
  out += row.flags;
  return out;
}

}  // namespace osum
