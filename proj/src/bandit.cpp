#include "banditsweeper/bandit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace banditsweeper {

void PolicyConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (!(c >= 0.0) || std::isinf(c)) throw std::invalid_argument("UCB c must be finite and >= 0");
}

std::string PolicyConfig::name() const {
  switch (kind) {
    case PolicyKind::Greedy:
      return "greedy";
    case PolicyKind::EpsilonGreedy:
      return "egreedy";
    case PolicyKind::Ucb:
      return "ucb";
  }
  return "greedy";
}

PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "greedy") return PolicyKind::Greedy;
  if (name == "egreedy" || name == "epsilon-greedy") return PolicyKind::EpsilonGreedy;
  if (name == "ucb") return PolicyKind::Ucb;
  throw std::invalid_argument("unknown policy '" + name + "' (expected greedy, egreedy, ucb)");
}

double score(const ActionStats& stats, std::uint64_t t, const PolicyConfig& policy) {
  if (policy.kind != PolicyKind::Ucb || policy.c == 0.0) return stats.q;
  if (stats.n == 0) return -std::numeric_limits<double>::infinity();
  return stats.q - policy.c * std::sqrt(std::log(static_cast<double>(t) + 1.0) /
                                        static_cast<double>(stats.n));
}

BanditPlayer::BanditPlayer(AgentState& agent, std::uint64_t decision_seed)
    : agent_(&agent), learner_(agent.options.learning ? &agent : nullptr), rng_(decision_seed) {}

BanditPlayer::BanditPlayer(const AgentState& agent, std::uint64_t decision_seed)
    : agent_(&agent), learner_(nullptr), rng_(decision_seed) {}

void BanditPlayer::reset(std::uint64_t decision_seed) {
  rng_.seed(decision_seed);
  pending_.clear();
  candidates_.clear();
  last_chosen_ = -1;
  std::fill(window_code_.begin(), window_code_.end(), ~std::uint64_t{0});
}

bool BanditPlayer::coin(std::uint64_t ties) {
  return std::uniform_int_distribution<std::uint64_t>(0, ties - 1)(rng_) == 0;
}

void BanditPlayer::refresh(const GameState& game) {
  if (game.rows() != cache_rows_ || game.cols() != cache_cols_) {
    cache_rows_ = game.rows();
    cache_cols_ = game.cols();
    const auto tiles = static_cast<std::size_t>(game.config().tiles());
    window_code_.assign(tiles, ~std::uint64_t{0});
    keys_.assign(tiles * 8, ActionKey{});
    stats_.assign(tiles * 8, nullptr);
  }
  const bool symmetry = agent_->options.symmetry;
  const ActionTable& table = agent_->table;

  candidates_.clear();
  for (int idx = 0; idx < game.config().tiles(); ++idx) {
    const Coord center = game.coord(idx);
    const std::uint64_t code = ActionKey::pack(read_window(game, center), Direction::N).code;
    const ActionKey raw{code};
    const bool changed = code != window_code_[idx];
    window_code_[idx] = code;
    for (Direction d : kDirections) {
      if (raw.at(window_slot(d)) != TileView::Covered) continue;
      const std::size_t slot = static_cast<std::size_t>(idx) * 8 + static_cast<std::size_t>(d);
      if (changed) {
        keys_[slot] = canonicalize(ActionKey{code | static_cast<std::uint64_t>(d)}, symmetry);
        stats_[slot] = table.find(keys_[slot]);
      } else if (stats_[slot] == nullptr) {
        stats_[slot] = table.find(keys_[slot]);
      }
      candidates_.push_back({center, d, keys_[slot], stats_[slot]});
    }
  }
}

const std::vector<Candidate>& BanditPlayer::candidates(const GameState& game) {
  refresh(game);
  return candidates_;
}

Move BanditPlayer::choose_move(const GameState& game) {
  if (game.finished()) throw std::logic_error("choose_move on a finished game");
  refresh(game);

  if (candidates_.empty()) {
    // Only a board with no neighbor pairs gets here.
    std::vector<Coord> covered;
    for (int idx = 0; idx < game.config().tiles(); ++idx) {
      if (game.visibility(game.coord(idx)) == Visibility::Covered) covered.push_back(game.coord(idx));
    }
    if (covered.empty()) throw std::logic_error("no covered tile left to play");
    const auto pick = std::uniform_int_distribution<std::size_t>(0, covered.size() - 1)(rng_);
    last_chosen_ = -1;
    return Move{MoveKind::Uncover, covered[pick], std::nullopt, -1};
  }

  if (game.exposed_safe() == 0 && game.flags_placed() == 0) return opening_move();

  const AgentOptions& options = agent_->options;
  const PolicyConfig& policy = options.policy;

  if (policy.kind == PolicyKind::EpsilonGreedy &&
      std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < policy.epsilon) {
    const auto pick = std::uniform_int_distribution<std::size_t>(0, candidates_.size() - 1)(rng_);
    last_chosen_ = static_cast<int>(pick);
    const Candidate& c = candidates_[pick];
    return Move{MoveKind::Uncover, c.target_coord(), c.key, last_chosen_};
  }

  const std::uint64_t t = agent_->total_selections;
  int best_min = -1, best_max = -1;
  double min_score = 0.0, max_q = 0.0;
  std::uint64_t min_n = 0, max_n = 0, min_ties = 0, max_ties = 0;

  for (int i = 0; i < static_cast<int>(candidates_.size()); ++i) {
    const ActionStats s = candidates_[i].values();
    const double sc = score(s, t, policy);
    if (best_min < 0 || sc < min_score || (sc == min_score && s.n > min_n)) {
      best_min = i;
      min_score = sc;
      min_n = s.n;
      min_ties = 1;
    } else if (sc == min_score && s.n == min_n && coin(++min_ties)) {
      best_min = i;
    }
    if (!options.flags) continue;
    if (best_max < 0 || s.q > max_q || (s.q == max_q && s.n > max_n)) {
      best_max = i;
      max_q = s.q;
      max_n = s.n;
      max_ties = 1;
    } else if (s.q == max_q && s.n == max_n && coin(++max_ties)) {
      best_max = i;
    }
  }

  int chosen = best_min;
  MoveKind kind = MoveKind::Uncover;
  if (options.flags && std::abs(max_q) > std::abs(candidates_[best_min].values().q)) {
    chosen = best_max;
    kind = MoveKind::PlaceFlag;
  }
  last_chosen_ = chosen;
  const Candidate& c = candidates_[chosen];
  return Move{kind, c.target_coord(), c.key, chosen};
}

// Blank board: uniform over target tiles, then over the windows that reach
// the chosen one. The edge windows differ only in their off-board symbols,
// and letting N break those ties would pin every opening to one spot.
Move BanditPlayer::opening_move() {
  std::vector<int> targets;
  std::vector<std::uint8_t> seen_tile(static_cast<std::size_t>(cache_rows_ * cache_cols_), 0);
  for (const Candidate& c : candidates_) {
    const Coord t = c.target_coord();
    const int idx = t.row * cache_cols_ + t.col;
    if (!seen_tile[idx]) targets.push_back(idx);
    seen_tile[idx] = 1;
  }
  const int tile =
      targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng_)];
  int chosen = -1;
  std::uint64_t seen = 0;
  for (int i = 0; i < static_cast<int>(candidates_.size()); ++i) {
    const Coord t = candidates_[i].target_coord();
    if (t.row * cache_cols_ + t.col == tile && coin(++seen)) chosen = i;
  }
  last_chosen_ = chosen;
  const Candidate& c = candidates_[chosen];
  return Move{MoveKind::Uncover, c.target_coord(), c.key, chosen};
}

void BanditPlayer::learn(ActionKey key, double reward) {
  if (!learner_) return;
  learner_->table.update(key, reward);
  if (observer_) observer_(key, reward);
}

void BanditPlayer::count_selection() {
  if (learner_) ++learner_->total_selections;
}

StepRecord BanditPlayer::apply_move(GameState& game, const Move& move) {
  StepRecord record{move, std::nullopt, std::nullopt, std::nullopt};
  if (move.kind == MoveKind::Uncover) {
    const RevealOutcome outcome = game.reveal(move.target);
    record.outcome = outcome;
    if (move.key) {
      learn(*move.key, reward_of(outcome));
      count_selection();
    }
    return record;
  }

  if (!move.key) throw std::logic_error("flag move without an action key");
  if (game.visibility(move.target) != Visibility::Covered) {
    throw std::logic_error("stale flag move: target is not covered");
  }
  game.toggle_flag(move.target);
  pending_.push_back({*move.key, move.target});
  count_selection();
  if (game.flags_placed() > game.config().mines) forced_unveil(game, record);
  return record;
}

void BanditPlayer::forced_unveil(GameState& game, StepRecord& record) {
  const ActionTable& table = agent_->table;
  std::size_t lowest = 0;
  for (std::size_t i = 1; i < pending_.size(); ++i) {
    if (table.get(pending_[i].key).q < table.get(pending_[lowest].key).q) lowest = i;
  }
  const PendingFlag flag = pending_[lowest];
  pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(lowest));
  game.toggle_flag(flag.coord);
  const RevealOutcome outcome = game.reveal(flag.coord);
  learn(flag.key, reward_of(outcome));
  record.forced_unveil = flag.coord;
  record.forced_outcome = outcome;
}

int BanditPlayer::settle_end_of_game(const GameState& game) {
  return settle_end_of_game(game, candidates_, last_chosen_);
}

int BanditPlayer::settle_end_of_game(const GameState& game,
                                     std::span<const Candidate> final_candidates, int chosen) {
  if (!game.finished()) throw std::logic_error("settle_end_of_game before the game ended");
  int updates = 0;
  const bool active = learner_ != nullptr;
  for (const PendingFlag& flag : pending_) {
    learn(flag.key, game.is_mine(flag.coord) ? 1.0 : -1.0);
    updates += active;
  }
  pending_.clear();
  for (int i = 0; i < static_cast<int>(final_candidates.size()); ++i) {
    if (i == chosen) continue;
    const Candidate& c = final_candidates[static_cast<std::size_t>(i)];
    learn(c.key, game.is_mine(c.target_coord()) ? 1.0 : -1.0);
    updates += active;
  }
  return updates;
}

}  // namespace banditsweeper
