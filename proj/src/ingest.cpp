#include "osum/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace osum {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;    // 1-based
  std::size_t column;  // 1-based, byte offset of the first character
};

// Splits on spaces/tabs, drops blank lines and lines starting with '#',
// and keeps (line, column) for error messages.
std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t tok_start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > tok_start) {
        tokens.push_back({line.substr(tok_start, i - tok_start), line_no, tok_start + 1});
      }
    }
    if (!tokens.empty() && tokens.front().text.front() != '#') lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::int64_t parse_number(const Token& tok, const char* what) {
  std::int64_t value = 0;
  const char* begin = tok.text.data();
  const char* end = begin + tok.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(tok.text) + "'",
                     tok.line, tok.column);
  }
  return value;
}

std::uint32_t parse_positive_id(const Token& tok, const char* what) {
  std::int64_t value = parse_number(tok, what);
  if (value < 1 || value > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(std::string(what) + " must be a positive integer, got '" +
                         std::string(tok.text) + "'",
                     tok.line, tok.column);
  }
  return static_cast<std::uint32_t>(value);
}

QItem parse_q_item(const Token& tok) {
  auto colon = tok.text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.text.size()) {
    throw ParseError("expected <item>:<quantity>, got '" + std::string(tok.text) + "'", tok.line,
                     tok.column);
  }
  Token item_tok{tok.text.substr(0, colon), tok.line, tok.column};
  Token qty_tok{tok.text.substr(colon + 1), tok.line, tok.column + colon + 1};
  QItem q;
  q.item = parse_positive_id(item_tok, "item id");
  q.quantity = parse_positive_id(qty_tok, "quantity");
  return q;
}

std::vector<QSequence> parse_sequences(std::string_view text) {
  std::vector<QSequence> sequences;
  std::set<std::pair<PeriodId, SequenceId>> keys;

  for (const auto& tokens : tokenize_lines(text)) {
    if (tokens.size() < 2) {
      throw ParseError("q-sequence line needs <tid> <sid> before any itemset", tokens.front().line,
                       tokens.front().column);
    }
    QSequence seq;
    seq.tid = parse_positive_id(tokens[0], "time period id");
    seq.sid = parse_positive_id(tokens[1], "sequence id");
    if (!keys.insert({seq.tid, seq.sid}).second) {
      throw ParseError("duplicate q-sequence (" + std::to_string(seq.tid) + ", " +
                           std::to_string(seq.sid) + ")",
                       tokens[0].line, tokens[0].column);
    }

    QItemset current;
    bool terminated = false;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const Token& tok = tokens[i];
      if (terminated) {
        throw ParseError("trailing token after -2", tok.line, tok.column);
      }
      if (tok.text == "-1") {
        if (current.items.empty()) {
          throw ParseError("empty itemset before -1", tok.line, tok.column);
        }
        std::sort(current.items.begin(), current.items.end(),
                  [](const QItem& a, const QItem& b) { return a.item < b.item; });
        for (std::size_t j = 1; j < current.items.size(); ++j) {
          if (current.items[j].item == current.items[j - 1].item) {
            throw ParseError("item " + std::to_string(current.items[j].item) +
                                 " listed twice in one itemset",
                             tok.line, tok.column);
          }
        }
        seq.itemsets.push_back(std::move(current));
        current = {};
      } else if (tok.text == "-2") {
        if (!current.items.empty()) {
          throw ParseError("itemset not closed with -1 before -2", tok.line, tok.column);
        }
        terminated = true;
      } else {
        current.items.push_back(parse_q_item(tok));
      }
    }
    if (!terminated) {
      throw ParseError("q-sequence line missing -2 terminator", tokens.back().line,
                       tokens.back().column);
    }
    if (seq.itemsets.empty()) {
      throw ParseError("q-sequence (" + std::to_string(seq.tid) + ", " + std::to_string(seq.sid) +
                           ") has no itemsets",
                       tokens[0].line, tokens[0].column);
    }
    sequences.push_back(std::move(seq));
  }

  std::sort(sequences.begin(), sequences.end(), [](const QSequence& a, const QSequence& b) {
    return std::pair(a.tid, a.sid) < std::pair(b.tid, b.sid);
  });
  return sequences;
}

UtilityTable parse_utilities(std::string_view text) {
  UtilityTable table;
  for (const auto& tokens : tokenize_lines(text)) {
    if (tokens.size() != 2) {
      throw ParseError("utility line must be '<item> <profit>'", tokens.front().line,
                       tokens.front().column);
    }
    ItemId item = parse_positive_id(tokens[0], "item id");
    std::int64_t profit = parse_number(tokens[1], "unit profit");
    if (profit < 1) {
      throw ParseError("unit profit must be >= 1", tokens[1].line, tokens[1].column);
    }
    if (table.contains(item)) {
      throw ParseError("duplicate utility entry for item " + std::to_string(item), tokens[0].line,
                       tokens[0].column);
    }
    table.set(item, profit);
  }
  return table;
}

ShelfTable parse_shelf(std::string_view text) {
  ShelfTable table;
  for (const auto& tokens : tokenize_lines(text)) {
    if (tokens.size() < 2) {
      throw ParseError("shelf line must be '<item> <tid> [<tid> ...]'", tokens.front().line,
                       tokens.front().column);
    }
    ItemId item = parse_positive_id(tokens[0], "item id");
    if (table.has_item(item)) {
      throw ParseError("duplicate shelf entry for item " + std::to_string(item), tokens[0].line,
                       tokens[0].column);
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      table.add(item, parse_positive_id(tokens[i], "time period id"));
    }
  }
  return table;
}

}  // namespace

namespace {

// Consistency checks and shelf derivation shared by the text and file entry
// points; `db` arrives with sequences and utilities filled in.
TemporalDatabase assemble_database(TemporalDatabase db, std::optional<ShelfTable> shelf,
                                   const ParseOptions& options) {
  // Every occurring item needs a profit entry up front.
  for (ItemId item : db.items()) {
    if (!db.utilities.contains(item)) {
      throw ValidationError("item " + std::to_string(item) + " has no utility entry");
    }
  }

  if (shelf) {
    db.shelf = std::move(*shelf);
    for (const auto& s : db.sequences) {
      for (const auto& ws : s.itemsets) {
        for (const auto& q : ws.items) {
          if (!db.shelf.has_item(q.item)) {
            throw ValidationError("item " + std::to_string(q.item) + " has no shelf entry");
          }
          if (!db.shelf.contains(q.item, s.tid)) {
            if (!options.relax_shelf) {
              throw ValidationError(
                  "item " + std::to_string(q.item) + " occurs in period " + std::to_string(s.tid) +
                  " but is not on shelf there (use shelf relaxation to widen)");
            }
            db.shelf.add(q.item, s.tid);
            if (options.warnings) {
              *options.warnings << "warning: widened shelf of item " << q.item
                                << " to cover period " << s.tid << "\n";
            }
          }
        }
      }
    }
  } else {
    // No shelf file: on-shelf exactly where the item occurs.
    for (const auto& s : db.sequences) {
      for (const auto& ws : s.itemsets) {
        for (const auto& q : ws.items) db.shelf.add(q.item, s.tid);
      }
    }
  }

  db.refresh_periods();
  db.validate();
  return db;
}

std::string read_file_or_throw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TemporalDatabase parse_database_text(std::string_view database_text, std::string_view utility_text,
                                     std::optional<std::string_view> shelf_text,
                                     const ParseOptions& options) {
  TemporalDatabase db;
  db.sequences = parse_sequences(database_text);
  db.utilities = parse_utilities(utility_text);
  std::optional<ShelfTable> shelf;
  if (shelf_text) shelf = parse_shelf(*shelf_text);
  return assemble_database(std::move(db), std::move(shelf), options);
}

TemporalDatabase parse_database(const DatasetBundle& bundle, const ParseOptions& options) {
  auto parse_with_context = [](const std::string& path, auto&& fn) {
    try {
      return fn(read_file_or_throw(path));
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  };

  TemporalDatabase db;
  db.sequences = parse_with_context(bundle.database_path,
                                    [](const std::string& text) { return parse_sequences(text); });
  db.utilities = parse_with_context(bundle.utility_path,
                                    [](const std::string& text) { return parse_utilities(text); });
  std::optional<ShelfTable> shelf;
  if (bundle.shelf_path) {
    shelf = parse_with_context(*bundle.shelf_path,
                               [](const std::string& text) { return parse_shelf(text); });
  }
  return assemble_database(std::move(db), std::move(shelf), options);
}

SerializedDatabase serialize_database(const TemporalDatabase& db) {
  SerializedDatabase out;

  std::ostringstream dbs;
  for (const auto& s : db.sequences) {
    dbs << s.tid << ' ' << s.sid;
    for (const auto& ws : s.itemsets) {
      for (const auto& q : ws.items) dbs << ' ' << q.item << ':' << q.quantity;
      dbs << " -1";
    }
    dbs << " -2\n";
  }
  out.database = dbs.str();

  std::ostringstream utils;
  for (const auto& [item, profit] : db.utilities.entries()) {
    utils << item << ' ' << profit << '\n';
  }
  out.utilities = utils.str();

  std::ostringstream shelf;
  for (const auto& [item, ps] : db.shelf.entries()) {
    shelf << item;
    for (PeriodId t : ps) shelf << ' ' << t;
    shelf << '\n';
  }
  out.shelf = shelf.str();
  return out;
}

void write_dataset(const TemporalDatabase& db, const std::string& prefix) {
  SerializedDatabase text = serialize_database(db);
  auto write = [](const std::string& path, const std::string& content) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw ValidationError("cannot write file: " + path);
    outf << content;
  };
  write(prefix + ".db", text.database);
  write(prefix + ".utils", text.utilities);
  write(prefix + ".shelf", text.shelf);
}

TemporalDatabase read_dataset(const std::string& prefix, const ParseOptions& options) {
  DatasetBundle bundle;
  bundle.database_path = prefix + ".db";
  bundle.utility_path = prefix + ".utils";
  std::string shelf_path = prefix + ".shelf";
  if (std::ifstream probe(shelf_path); probe) bundle.shelf_path = shelf_path;
  return parse_database(bundle, options);
}

TemporalDatabase generate_scaled(const TemporalDatabase& base, const GeneratorConfig& config) {
  if (config.scale < 1) throw ValidationError("scale must be >= 1");
  if (config.period_count < 1) throw ValidationError("period count must be >= 1");

  std::mt19937_64 rng(config.seed);
  TemporalDatabase out;
  out.utilities = base.utilities;

  // Period draws use the raw engine stream (not a distribution) so a given
  // seed produces the same dataset on every platform.
  std::map<PeriodId, SequenceId> next_sid;
  std::vector<QSequence> generated;
  generated.reserve(static_cast<std::size_t>(base.sequences.size()) * config.scale);
  for (std::uint32_t copy = 0; copy < config.scale; ++copy) {
    for (const auto& s : base.sequences) {
      QSequence clone = s;
      clone.tid = static_cast<PeriodId>(1 + rng() % config.period_count);
      clone.sid = ++next_sid[clone.tid];
      generated.push_back(std::move(clone));
    }
  }
  std::sort(generated.begin(), generated.end(), [](const QSequence& a, const QSequence& b) {
    return std::pair(a.tid, a.sid) < std::pair(b.tid, b.sid);
  });
  out.sequences = std::move(generated);

  for (const auto& s : out.sequences) {
    for (const auto& ws : s.itemsets) {
      for (const auto& q : ws.items) out.shelf.add(q.item, s.tid);
    }
  }
  out.refresh_periods();
  out.validate();
  return out;
}

}  // namespace osum
