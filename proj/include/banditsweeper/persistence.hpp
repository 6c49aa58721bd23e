// Tab-separated value-table files.
//
//   banditsweeper-table<TAB>1
//   kind<TAB>MAB | SA
//   policy / epsilon / c / flags / symmetry / rows / cols / mines /
//   total_selections / records  (one "name<TAB>value" line each, this order)
//   key<TAB>q<TAB>n
//   <encoded key><TAB><q><TAB><n>      sorted by encoded key
//
// Q is written in shortest round-trip form, so save -> load -> save is
// byte-identical.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "banditsweeper/bandit.hpp"
#include "banditsweeper/sa_baseline.hpp"

namespace banditsweeper {

inline constexpr int kTableFormatVersion = 1;

enum class TableKind : std::uint8_t { Mab, Sa };

struct TableHeader {
  int version = kTableFormatVersion;
  TableKind kind = TableKind::Mab;
  AgentOptions options;  // learning is not stored
  GameConfig origin;     // seed is not stored
  std::uint64_t total_selections = 0;
  std::size_t records = 0;
};

class TableFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedTable {
  TableHeader header;
  AgentState mab;  // filled for kind Mab; options.learning = false
  SAAgent sa;      // filled for kind Sa; learning = false
};

void save_table(std::ostream& out, const AgentState& agent, const GameConfig& origin);
void save_table(std::ostream& out, const SAAgent& agent, const GameConfig& origin);
/// Throws TableFormatError on any malformed or inconsistent content.
LoadedTable load_table(std::istream& in);

/// File variants; throw std::runtime_error when the file cannot be opened.
void save_table(const std::filesystem::path& path, const AgentState& agent,
                const GameConfig& origin);
void save_table(const std::filesystem::path& path, const SAAgent& agent,
                const GameConfig& origin);
LoadedTable load_table(const std::filesystem::path& path);

}  // namespace banditsweeper
