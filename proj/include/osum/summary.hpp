#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace osum {

// One benchmark/statistics row. The CSV schema is a stable external
// interface; field order and header text never change.
struct RunSummary {
  std::string algo;         // osums | osums-plus | oracle
  std::string xi;           // threshold exactly as given on the command line
  std::uint64_t patterns{0};
  std::uint64_t candidates{0};
  double time_ms{0};
  std::uint64_t peak_mem_bytes{0};
  std::string flags;        // "full", "no-ldp", combos joined with '+', "+limit" suffix
};

inline constexpr std::string_view kRunSummaryCsvHeader =
    "algo,xi,patterns,candidates,time_ms,peak_mem_bytes,flags";

std::string to_csv_row(const RunSummary& row);

}  // namespace osum
