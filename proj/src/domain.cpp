#include "adhoc/domain.hpp"

#include <cstdlib>
#include <set>

#include "adhoc/errors.hpp"

namespace adhoc {

std::string to_string(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string to_string(const OnticAction& a) {
  switch (a.kind) {
    case ActionKind::MoveN: return "N";
    case ActionKind::MoveS: return "S";
    case ActionKind::MoveE: return "E";
    case ActionKind::MoveW: return "W";
    case ActionKind::Pickup: return "P" + std::to_string(a.station);
    case ActionKind::Noop: return "0";
  }
  return "?";
}

OnticAction parse_action(const std::string& s) {
  if (s == "N") return OnticAction::north();
  if (s == "S") return OnticAction::south();
  if (s == "E") return OnticAction::east();
  if (s == "W") return OnticAction::west();
  if (s == "0") return OnticAction::noop();
  if (s.size() > 1 && s[0] == 'P') {
    char* end = nullptr;
    long v = std::strtol(s.c_str() + 1, &end, 10);
    if (end && *end == '\0' && v >= 0) return OnticAction::pickup(static_cast<int>(v));
  }
  throw InputError("unknown action token '" + s + "'");
}

Coord apply_move(Coord c, ActionKind kind) {
  switch (kind) {
    case ActionKind::MoveN: return {c.x, c.y + 1};
    case ActionKind::MoveS: return {c.x, c.y - 1};
    case ActionKind::MoveE: return {c.x + 1, c.y};
    case ActionKind::MoveW: return {c.x - 1, c.y};
    default: return c;
  }
}

DomainInstance::DomainInstance(int width, int height, std::vector<Coord> stations,
                               std::vector<Coord> toolboxes, std::vector<int> tool_of,
                               Coord worker_start, Coord fetcher_start)
    : width_(width),
      height_(height),
      stations_(std::move(stations)),
      toolboxes_(std::move(toolboxes)),
      tool_of_(std::move(tool_of)),
      worker_start_(worker_start),
      fetcher_start_(fetcher_start) {
  if (width_ <= 0 || height_ <= 0) throw InputError("grid dimensions must be positive");
  if (stations_.size() < 2) throw InputError("at least two stations are required");
  if (toolboxes_.empty()) throw InputError("at least one toolbox is required");
  if (tool_of_.size() != stations_.size())
    throw InputError("tool assignment must cover every station");

  std::set<Coord> seen;
  for (const auto& s : stations_) {
    if (!in_bounds(s)) throw InputError("station out of bounds: " + to_string(s));
    if (!seen.insert(s).second) throw InputError("duplicate station at " + to_string(s));
  }
  seen.clear();
  for (const auto& t : toolboxes_) {
    if (!in_bounds(t)) throw InputError("toolbox out of bounds: " + to_string(t));
    if (!seen.insert(t).second) throw InputError("duplicate toolbox at " + to_string(t));
  }
  for (int t : tool_of_)
    if (t < 0 || t >= num_toolboxes()) throw InputError("tool assigned to missing toolbox");
  if (!in_bounds(worker_start_)) throw InputError("worker start out of bounds");
  if (!in_bounds(fetcher_start_)) throw InputError("fetcher start out of bounds");
}

Coord DomainInstance::station(int i) const {
  if (!valid_station(i)) throw InputError("invalid station index " + std::to_string(i));
  return stations_[i];
}

Coord DomainInstance::toolbox(int i) const {
  if (i < 0 || i >= num_toolboxes()) throw InputError("invalid toolbox index " + std::to_string(i));
  return toolboxes_[i];
}

Coord DomainInstance::toolbox_for(int station) const {
  if (!valid_station(station)) throw InputError("invalid station index " + std::to_string(station));
  return toolboxes_[tool_of_[station]];
}

int DomainInstance::cell_index(Coord c) const {
  if (!in_bounds(c)) throw InputError("coordinate out of bounds: " + to_string(c));
  return c.y * width_ + c.x;
}

int DomainInstance::fetcher_state(const FetcherState& f) const {
  int held = 0;
  if (f.held) {
    if (!valid_station(*f.held)) throw InputError("held tool names an invalid station");
    held = *f.held + 1;
  }
  return cell_index(f.pos) * (num_stations() + 1) + held;
}

FetcherState DomainInstance::fetcher_state_at(int index) const {
  const int per_cell = num_stations() + 1;
  FetcherState f{cell_at(index / per_cell), std::nullopt};
  const int held = index % per_cell;
  if (held > 0) f.held = held - 1;
  return f;
}

int shortest_distance(const DomainInstance& instance, Coord from, Coord to) {
  if (!instance.in_bounds(from) || !instance.in_bounds(to))
    throw InputError("shortest_distance: coordinate out of bounds");
  return std::abs(from.x - to.x) + std::abs(from.y - to.y);
}

std::uint64_t count_optimal_plans(const DomainInstance& instance, Coord from, Coord to) {
  if (!instance.in_bounds(from) || !instance.in_bounds(to))
    throw InputError("count_optimal_plans: coordinate out of bounds");
  // C(dx + dy, dx), built multiplicatively so each partial product is exact.
  const std::uint64_t dx = static_cast<std::uint64_t>(std::abs(from.x - to.x));
  const std::uint64_t dy = static_cast<std::uint64_t>(std::abs(from.y - to.y));
  const std::uint64_t k = dx < dy ? dx : dy;
  const std::uint64_t n = dx + dy;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t scaled;
    if (__builtin_mul_overflow(result, n - k + i, &scaled))
      throw InputError("count_optimal_plans: plan count overflows 64 bits");
    result = scaled / i;
  }
  return result;
}

bool pickup_legal(const DomainInstance& instance, const FetcherState& fetcher, int station) {
  return instance.valid_station(station) && !fetcher.held &&
         fetcher.pos == instance.toolbox_for(station);
}

JointState step(const DomainInstance& instance, Coord worker_pos, const FetcherState& fetcher,
                const OnticAction& worker_action, const OnticAction& fetcher_action) {
  if (!instance.in_bounds(worker_pos) || !instance.in_bounds(fetcher.pos))
    throw TransitionError("agent outside the grid");
  JointState next{worker_pos, fetcher};

  if (worker_action.kind == ActionKind::Pickup)
    throw TransitionError("worker cannot pick up tools");
  if (worker_action.is_move()) {
    next.worker = apply_move(worker_pos, worker_action.kind);
    if (!instance.in_bounds(next.worker))
      throw TransitionError("worker move " + to_string(worker_action) + " leaves the grid");
  }

  if (fetcher_action.is_move()) {
    next.fetcher.pos = apply_move(fetcher.pos, fetcher_action.kind);
    if (!instance.in_bounds(next.fetcher.pos))
      throw TransitionError("fetcher move " + to_string(fetcher_action) + " leaves the grid");
  } else if (fetcher_action.kind == ActionKind::Pickup) {
    if (!pickup_legal(instance, fetcher, fetcher_action.station))
      throw TransitionError("illegal pickup of tool " + std::to_string(fetcher_action.station));
    next.fetcher.held = fetcher_action.station;
  }
  return next;
}

}  // namespace adhoc
