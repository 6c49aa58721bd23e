#include "banditsweeper/persistence.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "banditsweeper/text.hpp"

namespace banditsweeper {

namespace {

constexpr const char* kMagic = "banditsweeper-table";

struct Record {
  std::string key;
  ActionStats stats;
};

void write_file(std::ostream& out, const TableHeader& h, std::vector<Record> records) {
  std::sort(records.begin(), records.end(),
            [](const Record& a, const Record& b) { return a.key < b.key; });
  out << kMagic << '\t' << h.version << '\n'
      << "kind\t" << (h.kind == TableKind::Mab ? "MAB" : "SA") << '\n'
      << "policy\t" << h.options.policy.name() << '\n'
      << "epsilon\t" << format_double(h.options.policy.epsilon) << '\n'
      << "c\t" << format_double(h.options.policy.c) << '\n'
      << "flags\t" << int{h.options.flags} << '\n'
      << "symmetry\t" << int{h.options.symmetry} << '\n'
      << "rows\t" << h.origin.rows << '\n'
      << "cols\t" << h.origin.cols << '\n'
      << "mines\t" << h.origin.mines << '\n'
      << "total_selections\t" << h.total_selections << '\n'
      << "records\t" << records.size() << '\n'
      << "key\tq\tn\n";
  for (const Record& r : records) {
    out << r.key << '\t' << format_double(r.stats.q) << '\t' << r.stats.n << '\n';
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::vector<std::string> next_fields() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++line_no_;
    return split_tabs(line);
  }

  std::string field(const char* name) {
    auto f = next_fields();
    if (f.size() != 2 || f[0] != name) fail(std::string("expected '") + name + "' header line");
    return f[1];
  }

  template <class Int>
  Int integer(const char* name) {
    auto v = parse_int<Int>(field(name));
    if (!v) fail(std::string("bad integer for '") + name + "'");
    return *v;
  }

  double real(const char* name) {
    auto v = parse_double(field(name));
    if (!v) fail(std::string("bad number for '") + name + "'");
    return *v;
  }

  bool flag(const char* name) {
    const int v = integer<int>(name);
    if (v != 0 && v != 1) fail(std::string("'") + name + "' must be 0 or 1");
    return v == 1;
  }

  bool at_end() {
    std::string rest;
    while (std::getline(in_, rest)) {
      if (!rest.empty()) return false;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw TableFormatError("table file line " + std::to_string(line_no_) + ": " + why);
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

}  // namespace

void save_table(std::ostream& out, const AgentState& agent, const GameConfig& origin) {
  TableHeader h{kTableFormatVersion, TableKind::Mab, agent.options, origin, agent.total_selections,
                agent.table.size()};
  std::vector<Record> records;
  records.reserve(agent.table.size());
  for (const auto& [key, stats] : agent.table.entries()) records.push_back({encode(key), stats});
  write_file(out, h, std::move(records));
}

void save_table(std::ostream& out, const SAAgent& agent, const GameConfig& origin) {
  AgentOptions options;
  options.flags = false;
  options.symmetry = false;
  TableHeader h{kTableFormatVersion, TableKind::Sa, options, origin, 0, agent.table.size()};
  std::vector<Record> records;
  records.reserve(agent.table.size());
  for (const auto& [key, stats] : agent.table.entries()) records.push_back({encode(key), stats});
  write_file(out, h, std::move(records));
}

LoadedTable load_table(std::istream& in) {
  Reader r(in);
  LoadedTable out;
  TableHeader& h = out.header;

  auto magic = r.next_fields();
  if (magic.size() != 2 || magic[0] != kMagic) r.fail("not a banditsweeper table file");
  auto version = parse_int<int>(magic[1]);
  if (!version || *version != kTableFormatVersion) r.fail("unsupported format version");
  h.version = *version;

  const std::string kind = r.field("kind");
  if (kind == "MAB") {
    h.kind = TableKind::Mab;
  } else if (kind == "SA") {
    h.kind = TableKind::Sa;
  } else {
    r.fail("unknown table kind '" + kind + "'");
  }
  try {
    h.options.policy.kind = parse_policy_kind(r.field("policy"));
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  h.options.policy.epsilon = r.real("epsilon");
  h.options.policy.c = r.real("c");
  try {
    h.options.policy.validate();
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  h.options.flags = r.flag("flags");
  h.options.symmetry = r.flag("symmetry");
  h.options.learning = false;
  h.origin.rows = r.integer<int>("rows");
  h.origin.cols = r.integer<int>("cols");
  h.origin.mines = r.integer<int>("mines");
  h.total_selections = r.integer<std::uint64_t>("total_selections");
  h.records = r.integer<std::size_t>("records");

  const auto columns = r.next_fields();
  if (columns != std::vector<std::string>{"key", "q", "n"}) r.fail("expected column header");

  out.mab.options = h.options;
  out.mab.total_selections = h.total_selections;
  out.sa.learning = false;
  std::string previous;
  for (std::size_t i = 0; i < h.records; ++i) {
    const auto f = r.next_fields();
    if (f.size() != 3) r.fail("record must have 3 fields");
    if (i > 0 && !(previous < f[0])) r.fail("records must be sorted and unique");
    previous = f[0];
    const auto q = parse_double(f[1]);
    const auto n = parse_int<std::uint64_t>(f[2]);
    if (!q || *q < -1.0 || *q > 1.0) r.fail("Q must be a number in [-1, 1]");
    if (!n || *n == 0) r.fail("N must be a positive integer");
    try {
      if (h.kind == TableKind::Mab) {
        out.mab.table.insert(decode(f[0]), ActionStats{*q, *n});
      } else {
        out.sa.table.insert(decode_state_action(f[0]), ActionStats{*q, *n});
      }
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
  }
  if (!r.at_end()) r.fail("trailing content after the declared records");
  return out;
}

void save_table(const std::filesystem::path& path, const AgentState& agent,
                const GameConfig& origin) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write table file " + path.string());
  save_table(out, agent, origin);
  if (!out) throw std::runtime_error("failed writing table file " + path.string());
}

void save_table(const std::filesystem::path& path, const SAAgent& agent,
                const GameConfig& origin) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write table file " + path.string());
  save_table(out, agent, origin);
  if (!out) throw std::runtime_error("failed writing table file " + path.string());
}

LoadedTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open table file " + path.string());
  return load_table(in);
}

}  // namespace banditsweeper
