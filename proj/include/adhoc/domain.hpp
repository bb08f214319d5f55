#ifndef ADHOC_DOMAIN_HPP
#define ADHOC_DOMAIN_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace adhoc {

/// Grid cell. x is the column, y the row; MoveN increases y.
struct Coord {
  int x = 0;
  int y = 0;
  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

std::string to_string(Coord c);

enum class ActionKind : std::uint8_t { MoveN, MoveS, MoveE, MoveW, Pickup, Noop };

/// Ontic action of either agent. `station` names the tool picked up and is
/// only meaningful for Pickup.
struct OnticAction {
  ActionKind kind = ActionKind::Noop;
  int station = -1;

  static constexpr OnticAction north() { return {ActionKind::MoveN, -1}; }
  static constexpr OnticAction south() { return {ActionKind::MoveS, -1}; }
  static constexpr OnticAction east() { return {ActionKind::MoveE, -1}; }
  static constexpr OnticAction west() { return {ActionKind::MoveW, -1}; }
  static constexpr OnticAction noop() { return {ActionKind::Noop, -1}; }
  static constexpr OnticAction pickup(int station) { return {ActionKind::Pickup, station}; }

  constexpr bool is_move() const { return kind <= ActionKind::MoveW; }

  friend constexpr bool operator==(const OnticAction&, const OnticAction&) = default;
};

// Global tie-break order shared by every planner: N, S, E, W, Pickup, Noop.
constexpr int action_rank(const OnticAction& a) { return static_cast<int>(a.kind); }

std::string to_string(const OnticAction& a);
OnticAction parse_action(const std::string& s);

inline constexpr OnticAction kMoves[4] = {OnticAction::north(), OnticAction::south(),
                                          OnticAction::east(), OnticAction::west()};

Coord apply_move(Coord c, ActionKind kind);

struct FetcherState {
  Coord pos;
  std::optional<int> held;  // station whose tool is carried
  friend bool operator==(const FetcherState&, const FetcherState&) = default;
};

/// Immutable tool-fetching world on an obstacle-free grid.
class DomainInstance {
 public:
  DomainInstance(int width, int height, std::vector<Coord> stations, std::vector<Coord> toolboxes,
                 std::vector<int> tool_of, Coord worker_start, Coord fetcher_start);

  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }
  int num_stations() const { return static_cast<int>(stations_.size()); }
  int num_toolboxes() const { return static_cast<int>(toolboxes_.size()); }

  const std::vector<Coord>& stations() const { return stations_; }
  const std::vector<Coord>& toolboxes() const { return toolboxes_; }
  const std::vector<int>& tool_of() const { return tool_of_; }
  Coord station(int i) const;
  Coord toolbox(int i) const;
  /// Location of the toolbox that holds station i's tool.
  Coord toolbox_for(int station) const;
  Coord worker_start() const { return worker_start_; }
  Coord fetcher_start() const { return fetcher_start_; }

  bool in_bounds(Coord c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  bool valid_station(int i) const { return i >= 0 && i < num_stations(); }

  int cell_index(Coord c) const;
  Coord cell_at(int index) const { return {index % width_, index / width_}; }

  // Dense index spaces used by policies and tables.
  int worker_state_count() const { return num_cells(); }
  int worker_state(Coord c) const { return cell_index(c); }
  int fetcher_state_count() const { return num_cells() * (num_stations() + 1); }
  int fetcher_state(const FetcherState& f) const;
  FetcherState fetcher_state_at(int index) const;

  friend bool operator==(const DomainInstance&, const DomainInstance&) = default;

 private:
  int width_;
  int height_;
  std::vector<Coord> stations_;
  std::vector<Coord> toolboxes_;
  std::vector<int> tool_of_;
  Coord worker_start_;
  Coord fetcher_start_;
};

/// Minimal number of moves between two cells (Manhattan on the empty grid).
int shortest_distance(const DomainInstance& instance, Coord from, Coord to);

/// Number of distinct minimal-length move sequences from -> to.
std::uint64_t count_optimal_plans(const DomainInstance& instance, Coord from, Coord to);

struct JointState {
  Coord worker;
  FetcherState fetcher;
  friend bool operator==(const JointState&, const JointState&) = default;
};

/// Deterministic joint transition. Illegal moves are rejected, never clamped.
JointState step(const DomainInstance& instance, Coord worker_pos, const FetcherState& fetcher,
                const OnticAction& worker_action, const OnticAction& fetcher_action);

bool pickup_legal(const DomainInstance& instance, const FetcherState& fetcher, int station);

}  // namespace adhoc

#endif  // ADHOC_DOMAIN_HPP
