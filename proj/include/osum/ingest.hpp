#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "osum/types.hpp"

namespace osum {

// Paths of the three dataset files. The shelf file is optional: without it
// every item is taken to be on shelf exactly in the periods it occurs in.
struct DatasetBundle {
  std::string database_path;
  std::string utility_path;
  std::optional<std::string> shelf_path;
};

struct ParseOptions {
  // When an item occurs in a period missing from its shelf entry: widen the
  // shelf set (with a warning) instead of rejecting the dataset.
  bool relax_shelf = false;
  // Destination for relaxation warnings; null silences them.
  std::ostream* warnings = nullptr;
};

// Reads and validates a dataset. Throws ParseError for malformed files and
// ValidationError for semantic violations.
TemporalDatabase parse_database(const DatasetBundle& bundle, const ParseOptions& options = {});

// Same, but from in-memory text (used by tests and the generator round-trip).
TemporalDatabase parse_database_text(std::string_view database_text, std::string_view utility_text,
                                     std::optional<std::string_view> shelf_text,
                                     const ParseOptions& options = {});

// The three files of a dataset, rendered deterministically: sequences by
// (period, sequence id), items ascending, shelf periods ascending.
struct SerializedDatabase {
  std::string database;
  std::string utilities;
  std::string shelf;
};

SerializedDatabase serialize_database(const TemporalDatabase& db);

// Writes <prefix>.db / <prefix>.utils / <prefix>.shelf.
void write_dataset(const TemporalDatabase& db, const std::string& prefix);

// Reads <prefix>.db / <prefix>.utils / <prefix>.shelf (shelf optional).
TemporalDatabase read_dataset(const std::string& prefix, const ParseOptions& options = {});

struct GeneratorConfig {
  std::uint32_t scale{1};         // number of copies of the base sequence list
  std::uint32_t period_count{1};  // periods drawn uniformly from 1..period_count
  std::uint64_t seed{0};
};

// Scales a base database: concatenates `scale` copies of its sequences,
// reassigns each copy's period uniformly at random (fixed mt19937_64 stream,
// so output is identical across platforms for one seed), renumbers sequence
// ids within each period, keeps utilities, and recomputes the shelf table
// from occurrences.
TemporalDatabase generate_scaled(const TemporalDatabase& base, const GeneratorConfig& config);

}  // namespace osum
