#include "banditsweeper/actionspace.hpp"

#include <stdexcept>

namespace banditsweeper {

namespace {

struct SymmetryTables {
  int dest[kSymmetryCount][9];          // slot i moves to dest[k][i]
  Direction dir[kSymmetryCount][8];
  int compose[kSymmetryCount][kSymmetryCount];
  int inverse[kSymmetryCount];
};

constexpr int rotate_slot(int slot) {  // quarter turn clockwise
  const int r = slot / 3, c = slot % 3;
  return c * 3 + (2 - r);
}

constexpr int mirror_slot(int slot) {  // across the main diagonal
  return (slot % 3) * 3 + slot / 3;
}

constexpr Direction direction_at_slot(int slot) {
  for (Direction d : kDirections) {
    if (window_slot(d) == slot) return d;
  }
  return Direction::N;  // center; never asked for
}

constexpr SymmetryTables build_tables() {
  SymmetryTables t{};
  for (int k = 0; k < kSymmetryCount; ++k) {
    for (int i = 0; i < 9; ++i) {
      int s = k >= 4 ? mirror_slot(i) : i;
      for (int q = 0; q < k % 4; ++q) s = rotate_slot(s);
      t.dest[k][i] = s;
    }
    for (Direction d : kDirections) {
      t.dir[k][static_cast<int>(d)] = direction_at_slot(t.dest[k][window_slot(d)]);
    }
  }
  for (int a = 0; a < kSymmetryCount; ++a) {
    for (int b = 0; b < kSymmetryCount; ++b) {
      for (int k = 0; k < kSymmetryCount; ++k) {
        bool same = true;
        for (int i = 0; i < 9; ++i) same = same && t.dest[a][t.dest[b][i]] == t.dest[k][i];
        if (same) t.compose[a][b] = k;
      }
    }
    for (int k = 0; k < kSymmetryCount; ++k) {
      if (t.compose[a][k] == 0) t.inverse[a] = k;
    }
  }
  return t;
}

constexpr SymmetryTables kTables = build_tables();

constexpr std::string_view kSymbols = "#012345678CF";
constexpr std::string_view kDirectionNames[8] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};

int shift_of(int slot) { return 4 * (9 - slot); }

}  // namespace

std::string_view direction_name(Direction d) { return kDirectionNames[static_cast<int>(d)]; }

char symbol_char(TileView v) { return kSymbols[static_cast<int>(v)]; }

ActionKey ActionKey::pack(const Window& window, Direction target) {
  std::uint64_t code = static_cast<std::uint64_t>(target);
  for (int i = 0; i < 9; ++i) {
    code |= static_cast<std::uint64_t>(window[i]) << shift_of(i);
  }
  return ActionKey{code};
}

Window ActionKey::window() const {
  Window w{};
  for (int i = 0; i < 9; ++i) w[i] = at(i);
  return w;
}

ActionKey transform(ActionKey key, int symmetry) {
  const int* dest = kTables.dest[symmetry];
  std::uint64_t code = static_cast<std::uint64_t>(kTables.dir[symmetry][key.code & 0xF]);
  for (int i = 0; i < 9; ++i) {
    code |= ((key.code >> shift_of(i)) & 0xF) << shift_of(dest[i]);
  }
  return ActionKey{code};
}

Window transform(const Window& window, int symmetry) {
  Window out{};
  for (int i = 0; i < 9; ++i) out[kTables.dest[symmetry][i]] = window[i];
  return out;
}

Direction transform(Direction d, int symmetry) {
  return kTables.dir[symmetry][static_cast<int>(d)];
}

int compose(int outer, int inner) { return kTables.compose[outer][inner]; }

int inverse(int symmetry) { return kTables.inverse[symmetry]; }

ActionKey canonicalize(ActionKey key, bool use_symmetry) {
  if (!use_symmetry) return key;
  ActionKey best = key;
  for (int k = 1; k < kSymmetryCount; ++k) {
    const ActionKey t = transform(key, k);
    if (t < best) best = t;
  }
  return best;
}

ActionKey canonicalize(const RawAction& action, bool use_symmetry) {
  return canonicalize(ActionKey::pack(action.window, action.target), use_symmetry);
}

Window read_window(const GameState& game, Coord center) {
  Window w{};
  for (int i = 0; i < 9; ++i) {
    w[i] = game.view({center.row + i / 3 - 1, center.col + i % 3 - 1});
  }
  return w;
}

std::vector<RawAction> enumerate_actions(const GameState& game) {
  std::vector<RawAction> actions;
  for (int r = 0; r < game.rows(); ++r) {
    for (int c = 0; c < game.cols(); ++c) {
      const Coord center{r, c};
      const Window w = read_window(game, center);
      for (Direction d : kDirections) {
        if (w[window_slot(d)] == TileView::Covered) actions.push_back({w, d, center});
      }
    }
  }
  return actions;
}

std::string encode(ActionKey key) {
  std::string out;
  out.reserve(12);
  for (int i = 0; i < 9; ++i) out.push_back(symbol_char(key.at(i)));
  out.push_back('|');
  out.append(direction_name(key.target()));
  return out;
}

std::string encode(const RawAction& action) {
  return encode(ActionKey::pack(action.window, action.target));
}

ActionKey decode(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad action key '" + std::string(text) + "': " + why);
  };
  if (text.size() < 11 || text[9] != '|') throw fail("expected 9 symbols, '|', direction");
  Window w{};
  for (int i = 0; i < 9; ++i) {
    const auto pos = kSymbols.find(text[i]);
    if (pos == std::string_view::npos) throw fail("unknown symbol");
    w[i] = static_cast<TileView>(pos);
  }
  const std::string_view dir_text = text.substr(10);
  int dir = -1;
  for (int d = 0; d < 8; ++d) {
    if (kDirectionNames[d] == dir_text) dir = d;
  }
  if (dir < 0) throw fail("unknown direction");
  const auto target = static_cast<Direction>(dir);
  if (w[window_slot(target)] != TileView::Covered) throw fail("target tile is not covered");
  if (w[kCenterSlot] == TileView::OutOfBounds) throw fail("center is off the board");
  return ActionKey::pack(w, target);
}

std::string render_motif(ActionKey key) {
  std::string out;
  const int target_slot = window_slot(key.target());
  for (int i = 0; i < 9; ++i) {
    out.push_back(i == target_slot ? '?' : symbol_char(key.at(i)));
    if (i % 3 == 2) out.push_back('\n');
  }
  return out;
}

}  // namespace banditsweeper
