// Tabular multi-armed bandit player: one arm per canonical action key.
//
// The opening move on a blank board uncovers a uniformly random tile. After
// that, each turn every candidate action (a 3x3 window plus a covered target) is
// scored from the shared value table. The lowest-scoring action uncovers its
// target; the highest-valued one flags its target instead when its |Q| is
// larger. Uncovers learn immediately. Flags learn when they are forcibly
// unveiled or when the game ends, together with every candidate passed over
// on the final turn.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banditsweeper/actionspace.hpp"
#include "banditsweeper/engine.hpp"
#include "banditsweeper/rng.hpp"
#include "banditsweeper/value_table.hpp"

namespace banditsweeper {

using ActionTable = ValueTable<ActionKey, ActionKeyHash>;

enum class PolicyKind : std::uint8_t { Greedy, EpsilonGreedy, Ucb };

struct PolicyConfig {
  PolicyKind kind = PolicyKind::Greedy;
  double epsilon = 0.0;  // EpsilonGreedy only
  double c = 0.0;        // Ucb only
  std::uint64_t seed = 0;

  static PolicyConfig greedy() { return {}; }
  static PolicyConfig epsilon_greedy(double eps) { return {PolicyKind::EpsilonGreedy, eps, 0.0}; }
  static PolicyConfig ucb(double c) { return {PolicyKind::Ucb, 0.0, c}; }

  void validate() const;
  std::string name() const;  // "greedy", "egreedy", "ucb"
};

/// Throws std::invalid_argument for names other than greedy, egreedy, ucb.
PolicyKind parse_policy_kind(const std::string& name);

/// Lower is more attractive to uncover. Greedy and epsilon-greedy score Q;
/// UCB scores Q - c * sqrt(ln(t + 1) / N), with never-played actions at
/// -infinity when c > 0 (and at their optimistic Q when c = 0).
double score(const ActionStats& stats, std::uint64_t t, const PolicyConfig& policy);

struct AgentOptions {
  PolicyConfig policy;
  bool flags = true;
  bool symmetry = true;
  bool learning = true;
};

/// Everything that persists across episodes.
struct AgentState {
  AgentOptions options;
  ActionTable table;
  std::uint64_t total_selections = 0;  // UCB time index
};

struct Candidate {
  Coord center;
  Direction target = Direction::N;
  ActionKey key;
  const ActionStats* stats = nullptr;  // null while the key is unlearned

  Coord target_coord() const { return step(center, target); }
  ActionStats values() const { return stats ? *stats : ActionStats{}; }
};

enum class MoveKind : std::uint8_t { Uncover, PlaceFlag };

struct Move {
  MoveKind kind = MoveKind::Uncover;
  Coord target;
  /// Empty only for the keyless fallback on boards without any 3x3
  /// neighborhood (a single tile).
  std::optional<ActionKey> key;
  int candidate = -1;  // index into the turn's candidate list
};

struct PendingFlag {
  ActionKey key;
  Coord coord;
};

struct StepRecord {
  Move move;
  std::optional<RevealOutcome> outcome;  // set for uncovers
  std::optional<Coord> forced_unveil;
  std::optional<RevealOutcome> forced_outcome;
};

/// Per-episode decision machinery bound to an agent. Holds the pending flag
/// list, the tie-break stream and a per-board cache of canonical keys.
class BanditPlayer {
 public:
  /// Learns into `agent` when agent.options.learning is set.
  BanditPlayer(AgentState& agent, std::uint64_t decision_seed);
  /// Read-only view of a frozen table; safe to run concurrently.
  BanditPlayer(const AgentState& agent, std::uint64_t decision_seed);

  /// Starts a new episode: clears pending flags, reseeds tie-breaking.
  void reset(std::uint64_t decision_seed);

  /// Candidate actions for the current position (refreshes the cache).
  const std::vector<Candidate>& candidates(const GameState& game);

  Move choose_move(const GameState& game);
  StepRecord apply_move(GameState& game, const Move& move);

  /// Delayed learning once the game is over: pending flags, then every
  /// final-turn candidate other than the chosen one. Returns the number of
  /// updates applied (0 when not learning).
  int settle_end_of_game(const GameState& game);
  int settle_end_of_game(const GameState& game, std::span<const Candidate> final_candidates,
                         int chosen);

  std::span<const PendingFlag> pending_flags() const { return pending_; }
  const std::vector<Candidate>& last_candidates() const { return candidates_; }
  bool learning() const { return learner_ != nullptr; }

  /// Called with every (key, reward) applied to the table.
  void set_update_observer(std::function<void(ActionKey, double)> observer) {
    observer_ = std::move(observer);
  }

 private:
  void refresh(const GameState& game);
  Move opening_move();
  void learn(ActionKey key, double reward);
  void count_selection();
  void forced_unveil(GameState& game, StepRecord& record);
  bool coin(std::uint64_t ties);  // true with probability 1 / ties

  const AgentState* agent_;
  AgentState* learner_;
  Rng rng_;
  std::vector<PendingFlag> pending_;
  std::vector<Candidate> candidates_;
  int last_chosen_ = -1;
  std::function<void(ActionKey, double)> observer_;

  // Cache keyed by center index: raw window code, then per direction the
  // canonical key and table entry.
  int cache_rows_ = 0;
  int cache_cols_ = 0;
  std::vector<std::uint64_t> window_code_;
  std::vector<ActionKey> keys_;
  std::vector<const ActionStats*> stats_;
};

}  // namespace banditsweeper
