#pragma once

// Deterministic Toy domain: a gripper agent on a grid that picks up toys,
// drops them into containers, and carries containers between rooms.
//
// Cells are numbered row-major: cell = y * grid_width + x, with north being
// y - 1. Entities are addressed by index in the world configuration; ids are
// used only at the API surface.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/error.hpp"

namespace groundsmith {

struct ToySpec {
  std::string id;
  std::string shape;
  std::string color;
  int start_cell = 0;
  /// Surface name used in atomic propositions; defaults to the id.
  std::string label;
};

struct ContainerSpec {
  std::string id;
  std::string kind;
  int start_cell = 0;
  std::string label;
};

struct RoomSpec {
  std::string id;
  std::vector<int> cells;
  std::string label;
};

struct WorldConfig {
  int grid_width = 1;
  int grid_height = 1;
  std::vector<ToySpec> toys;
  std::vector<ContainerSpec> containers;
  std::vector<RoomSpec> rooms;
  int agent_start = 0;
  double gamma = 0.95;
  /// Attribute values that exist in the world even when no toy carries them.
  std::vector<std::string> colors;
  std::vector<std::string> shapes;
};

inline void to_json(nlohmann::json& j, const WorldConfig& w) {
  using nlohmann::json;
  json toys = json::array();
  for (const auto& t : w.toys) {
    json e{{"id", t.id}, {"shape", t.shape}, {"color", t.color}, {"start_cell", t.start_cell}};
    if (!t.label.empty() && t.label != t.id) e["label"] = t.label;
    toys.push_back(std::move(e));
  }
  json containers = json::array();
  for (const auto& c : w.containers) {
    json e{{"id", c.id}, {"kind", c.kind}, {"start_cell", c.start_cell}};
    if (!c.label.empty() && c.label != c.id) e["label"] = c.label;
    containers.push_back(std::move(e));
  }
  json rooms = json::array();
  for (const auto& r : w.rooms) {
    json e{{"id", r.id}, {"cells", r.cells}};
    if (!r.label.empty() && r.label != r.id) e["label"] = r.label;
    rooms.push_back(std::move(e));
  }
  j = json{{"grid_width", w.grid_width}, {"grid_height", w.grid_height},
           {"toys", toys},           {"containers", containers},
           {"rooms", rooms},         {"agent_start", w.agent_start},
           {"gamma", w.gamma}};
  if (!w.colors.empty()) j["colors"] = w.colors;
  if (!w.shapes.empty()) j["shapes"] = w.shapes;
}

inline void from_json(const nlohmann::json& j, WorldConfig& w) {
  try {
    w = WorldConfig{};
    w.grid_width = j.at("grid_width").get<int>();
    w.grid_height = j.at("grid_height").get<int>();
    w.agent_start = j.at("agent_start").get<int>();
    w.gamma = j.value("gamma", 0.95);
    for (const auto& e : j.value("toys", nlohmann::json::array()))
      w.toys.push_back({e.at("id").get<std::string>(), e.at("shape").get<std::string>(),
                        e.at("color").get<std::string>(), e.at("start_cell").get<int>(),
                        e.value("label", std::string{})});
    for (const auto& e : j.value("containers", nlohmann::json::array()))
      w.containers.push_back({e.at("id").get<std::string>(), e.at("kind").get<std::string>(),
                              e.at("start_cell").get<int>(), e.value("label", std::string{})});
    for (const auto& e : j.value("rooms", nlohmann::json::array()))
      w.rooms.push_back({e.at("id").get<std::string>(), e.at("cells").get<std::vector<int>>(),
                         e.value("label", std::string{})});
    w.colors = j.value("colors", std::vector<std::string>{});
    w.shapes = j.value("shapes", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("world config: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// State and actions

struct EntityLocation {
  enum class Kind : std::uint8_t { Cell, Held, InContainer };
  Kind kind = Kind::Cell;
  /// Cell index for Cell, container index for InContainer, unused for Held.
  int value = 0;

  static EntityLocation cell(int c) { return {Kind::Cell, c}; }
  static EntityLocation held() { return {Kind::Held, 0}; }
  static EntityLocation in_container(int k) { return {Kind::InContainer, k}; }

  friend bool operator==(const EntityLocation&, const EntityLocation&) = default;
};

struct ToyState {
  int agent_cell = 0;
  /// Indexed like WorldConfig::containers; never InContainer.
  std::vector<EntityLocation> containers;
  /// Indexed like WorldConfig::toys.
  std::vector<EntityLocation> toys;

  friend bool operator==(const ToyState&, const ToyState&) = default;
};

struct ToyStateHash {
  std::size_t operator()(const ToyState& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.agent_cell) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](const EntityLocation& l) {
      std::size_t v = (static_cast<std::size_t>(l.kind) << 24) ^ static_cast<std::size_t>(l.value);
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (const auto& l : s.containers) mix(l);
    for (const auto& l : s.toys) mix(l);
    return h;
  }
};

enum class Direction : std::uint8_t { North, South, East, West };

inline std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::North: return "north";
    case Direction::South: return "south";
    case Direction::East: return "east";
    case Direction::West: return "west";
  }
  return "?";
}

struct Action {
  enum class Kind : std::uint8_t { Move, Pickup, PutDown, PlaceInContainer };
  Kind kind = Kind::Move;
  Direction direction = Direction::North;
  /// Entity id for Pickup, container id for PlaceInContainer.
  std::string target;

  static Action move(Direction d) { return {Kind::Move, d, {}}; }
  static Action pickup(std::string id) { return {Kind::Pickup, Direction::North, std::move(id)}; }
  static Action put_down() { return {Kind::PutDown, Direction::North, {}}; }
  static Action place_in(std::string container) {
    return {Kind::PlaceInContainer, Direction::North, std::move(container)};
  }

  friend bool operator==(const Action& a, const Action& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Move) return a.direction == b.direction;
    return a.target == b.target;
  }
};

inline std::string to_string(const Action& a) {
  switch (a.kind) {
    case Action::Kind::Move: return "move(" + std::string(direction_name(a.direction)) + ")";
    case Action::Kind::Pickup: return "pickup(" + a.target + ")";
    case Action::Kind::PutDown: return "put_down";
    case Action::Kind::PlaceInContainer: return "place_in(" + a.target + ")";
  }
  return "?";
}

inline Action parse_action(std::string_view s) {
  auto arg = [&](std::string_view prefix) -> std::optional<std::string> {
    if (s.size() > prefix.size() + 1 && s.substr(0, prefix.size()) == prefix && s.back() == ')')
      return std::string(s.substr(prefix.size(), s.size() - prefix.size() - 1));
    return std::nullopt;
  };
  if (s == "put_down") return Action::put_down();
  if (auto d = arg("move(")) {
    for (auto dir : {Direction::North, Direction::South, Direction::East, Direction::West})
      if (*d == direction_name(dir)) return Action::move(dir);
  }
  if (auto t = arg("pickup(")) return Action::pickup(*t);
  if (auto t = arg("place_in(")) return Action::place_in(*t);
  throw Error(ErrorKind::SyntaxError, "unknown action '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Validated world

enum class Sort : std::uint8_t { Agent, Toy, Container, Room, Location, Color, Shape };

inline std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Agent: return "agent";
    case Sort::Toy: return "toy";
    case Sort::Container: return "container";
    case Sort::Room: return "room";
    case Sort::Location: return "location";
    case Sort::Color: return "color";
    case Sort::Shape: return "shape";
  }
  return "?";
}

inline std::optional<Sort> parse_sort(std::string_view s) {
  for (auto v : {Sort::Agent, Sort::Toy, Sort::Container, Sort::Room, Sort::Location,
                 Sort::Color, Sort::Shape})
    if (sort_name(v) == s) return v;
  return std::nullopt;
}

/// Whether a value of concrete sort `actual` may fill a parameter of sort
/// `wanted`. Location accepts anything with a position of its own.
inline bool sort_accepts(Sort wanted, Sort actual) {
  if (wanted == actual) return true;
  return wanted == Sort::Location && (actual == Sort::Toy || actual == Sort::Container);
}

/// A WorldConfig that has passed validation, with id lookups.
class World {
 public:
  explicit World(WorldConfig cfg) : cfg_(std::move(cfg)) {
    auto bad = [](const std::string& m) { throw Error(ErrorKind::InvalidConfig, m); };
    if (cfg_.grid_width <= 0 || cfg_.grid_height <= 0) bad("grid dimensions must be positive");
    if (!(cfg_.gamma > 0.0 && cfg_.gamma < 1.0)) bad("gamma must lie in (0, 1)");
    const int n = cell_count();
    auto check_cell = [&](int c, const std::string& who) {
      if (c < 0 || c >= n) bad(who + " start cell " + std::to_string(c) + " outside grid");
    };
    check_cell(cfg_.agent_start, "agent");
    std::set<std::string> ids;
    auto claim = [&](std::string& label, const std::string& id) {
      if (id.empty()) bad("entity ids must be nonempty");
      if (!ids.insert(id).second) bad("duplicate id '" + id + "'");
      if (label.empty()) label = id;
    };
    for (std::size_t i = 0; i < cfg_.toys.size(); ++i) {
      auto& t = cfg_.toys[i];
      claim(t.label, t.id);
      check_cell(t.start_cell, "toy '" + t.id + "'");
      if (t.shape.empty() || t.color.empty()) bad("toy '" + t.id + "' needs shape and color");
      toy_index_[t.id] = static_cast<int>(i);
      add_unique(colors_, t.color);
      add_unique(shapes_, t.shape);
    }
    for (std::size_t i = 0; i < cfg_.containers.size(); ++i) {
      auto& c = cfg_.containers[i];
      claim(c.label, c.id);
      check_cell(c.start_cell, "container '" + c.id + "'");
      container_index_[c.id] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < cfg_.rooms.size(); ++i) {
      auto& r = cfg_.rooms[i];
      claim(r.label, r.id);
      if (r.cells.empty()) bad("room '" + r.id + "' has no cells");
      for (int c : r.cells) check_cell(c, "room '" + r.id + "'");
      room_index_[r.id] = static_cast<int>(i);
      room_cells_.emplace_back(r.cells.begin(), r.cells.end());
    }
    for (const auto& c : cfg_.colors) add_unique(colors_, c);
    for (const auto& s : cfg_.shapes) add_unique(shapes_, s);
  }

  const WorldConfig& config() const noexcept { return cfg_; }
  int cell_count() const noexcept { return cfg_.grid_width * cfg_.grid_height; }
  std::size_t toy_count() const noexcept { return cfg_.toys.size(); }
  std::size_t container_count() const noexcept { return cfg_.containers.size(); }
  const std::vector<std::string>& colors() const noexcept { return colors_; }
  const std::vector<std::string>& shapes() const noexcept { return shapes_; }

  std::optional<int> toy_index(std::string_view id) const { return lookup(toy_index_, id); }
  std::optional<int> container_index(std::string_view id) const {
    return lookup(container_index_, id);
  }
  std::optional<int> room_index(std::string_view id) const { return lookup(room_index_, id); }
  bool room_contains(int room, int cell) const { return room_cells_[room].count(cell) != 0; }

  /// Whether `value` is an inhabitant of `sort` in this world.
  bool has_sort(Sort sort, std::string_view value) const {
    switch (sort) {
      case Sort::Agent: return value == "agent";
      case Sort::Toy: return toy_index(value).has_value();
      case Sort::Container: return container_index(value).has_value();
      case Sort::Room: return room_index(value).has_value();
      case Sort::Location:
        return toy_index(value).has_value() || container_index(value).has_value();
      case Sort::Color: return std::find(colors_.begin(), colors_.end(), value) != colors_.end();
      case Sort::Shape: return std::find(shapes_.begin(), shapes_.end(), value) != shapes_.end();
    }
    return false;
  }

  /// Display label of an entity or attribute value.
  const std::string& label_of(Sort sort, const std::string& value) const {
    if (auto i = toy_index(value); i && (sort == Sort::Toy || sort == Sort::Location))
      return cfg_.toys[*i].label;
    if (auto i = container_index(value); i && (sort == Sort::Container || sort == Sort::Location))
      return cfg_.containers[*i].label;
    if (auto i = room_index(value); i && sort == Sort::Room) return cfg_.rooms[*i].label;
    return value;
  }

  ToyState initial_state() const {
    ToyState s;
    s.agent_cell = cfg_.agent_start;
    for (const auto& c : cfg_.containers) s.containers.push_back(EntityLocation::cell(c.start_cell));
    for (const auto& t : cfg_.toys) s.toys.push_back(EntityLocation::cell(t.start_cell));
    return s;
  }

  /// Throws InvalidState when s violates the state invariants.
  void validate(const ToyState& s) const {
    auto bad = [](const std::string& m) { throw Error(ErrorKind::InvalidState, m); };
    const int n = cell_count();
    if (s.agent_cell < 0 || s.agent_cell >= n) bad("agent cell out of range");
    if (s.containers.size() != cfg_.containers.size() || s.toys.size() != cfg_.toys.size())
      bad("entity count does not match world");
    int held = 0;
    for (const auto& l : s.containers) {
      if (l.kind == EntityLocation::Kind::InContainer) bad("containers cannot nest");
      if (l.kind == EntityLocation::Kind::Held) ++held;
      if (l.kind == EntityLocation::Kind::Cell && (l.value < 0 || l.value >= n))
        bad("container cell out of range");
    }
    for (const auto& l : s.toys) {
      if (l.kind == EntityLocation::Kind::Held) ++held;
      if (l.kind == EntityLocation::Kind::Cell && (l.value < 0 || l.value >= n))
        bad("toy cell out of range");
      if (l.kind == EntityLocation::Kind::InContainer &&
          (l.value < 0 || l.value >= static_cast<int>(s.containers.size())))
        bad("toy refers to unknown container");
    }
    if (held > 1) bad("more than one entity held");
  }

  int container_cell(const ToyState& s, int k) const {
    const auto& l = s.containers[k];
    return l.kind == EntityLocation::Kind::Held ? s.agent_cell : l.value;
  }

  int toy_cell(const ToyState& s, int t) const {
    const auto& l = s.toys[t];
    switch (l.kind) {
      case EntityLocation::Kind::Cell: return l.value;
      case EntityLocation::Kind::Held: return s.agent_cell;
      case EntityLocation::Kind::InContainer: return container_cell(s, l.value);
    }
    return l.value;
  }

  bool holding_anything(const ToyState& s) const {
    auto held = [](const EntityLocation& l) { return l.kind == EntityLocation::Kind::Held; };
    return std::any_of(s.toys.begin(), s.toys.end(), held) ||
           std::any_of(s.containers.begin(), s.containers.end(), held);
  }

  /// Compact human-readable state string, stable across runs.
  std::string digest(const ToyState& s) const {
    std::string out = "agent@" + std::to_string(s.agent_cell);
    auto loc = [&](const EntityLocation& l) -> std::string {
      switch (l.kind) {
        case EntityLocation::Kind::Cell: return "@" + std::to_string(l.value);
        case EntityLocation::Kind::Held: return ":held";
        case EntityLocation::Kind::InContainer: return ":in:" + cfg_.containers[l.value].id;
      }
      return "";
    };
    for (std::size_t k = 0; k < s.containers.size(); ++k)
      out += " " + cfg_.containers[k].id + loc(s.containers[k]);
    for (std::size_t t = 0; t < s.toys.size(); ++t) out += " " + cfg_.toys[t].id + loc(s.toys[t]);
    return out;
  }

 private:
  static void add_unique(std::vector<std::string>& v, const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  }
  static std::optional<int> lookup(const std::map<std::string, int, std::less<>>& m,
                                   std::string_view id) {
    auto it = m.find(id);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  WorldConfig cfg_;
  std::map<std::string, int, std::less<>> toy_index_;
  std::map<std::string, int, std::less<>> container_index_;
  std::map<std::string, int, std::less<>> room_index_;
  std::vector<std::set<int>> room_cells_;
  std::vector<std::string> colors_;
  std::vector<std::string> shapes_;
};

// ---------------------------------------------------------------------------
// Dynamics

inline std::optional<int> neighbor(const World& w, int cell, Direction d) {
  const int width = w.config().grid_width;
  const int height = w.config().grid_height;
  int x = cell % width;
  int y = cell / width;
  switch (d) {
    case Direction::North: --y; break;
    case Direction::South: ++y; break;
    case Direction::East: ++x; break;
    case Direction::West: --x; break;
  }
  if (x < 0 || y < 0 || x >= width || y >= height) return std::nullopt;
  return y * width + x;
}

/// Deterministic successor. Actions whose preconditions fail leave the state
/// unchanged.
inline ToyState transition(const World& w, const ToyState& s, const Action& a) {
  w.validate(s);
  ToyState next = s;
  switch (a.kind) {
    case Action::Kind::Move:
      if (auto c = neighbor(w, s.agent_cell, a.direction)) next.agent_cell = *c;
      break;
    case Action::Kind::Pickup: {
      if (w.holding_anything(s)) break;
      if (auto t = w.toy_index(a.target)) {
        const auto& l = s.toys[*t];
        if (l.kind == EntityLocation::Kind::Cell && l.value == s.agent_cell)
          next.toys[*t] = EntityLocation::held();
      } else if (auto k = w.container_index(a.target)) {
        const auto& l = s.containers[*k];
        if (l.kind == EntityLocation::Kind::Cell && l.value == s.agent_cell)
          next.containers[*k] = EntityLocation::held();
      }
      break;
    }
    case Action::Kind::PutDown:
      for (auto& l : next.toys)
        if (l.kind == EntityLocation::Kind::Held) l = EntityLocation::cell(s.agent_cell);
      for (auto& l : next.containers)
        if (l.kind == EntityLocation::Kind::Held) l = EntityLocation::cell(s.agent_cell);
      break;
    case Action::Kind::PlaceInContainer: {
      auto k = w.container_index(a.target);
      if (!k) break;
      const auto& cl = s.containers[*k];
      if (cl.kind != EntityLocation::Kind::Cell || cl.value != s.agent_cell) break;
      for (auto& l : next.toys) {
        if (l.kind == EntityLocation::Kind::Held) {
          l = EntityLocation::in_container(*k);
          break;
        }
      }
      break;
    }
  }
  return next;
}

/// Moves N, S, E, W; then pickups by id; then PutDown; then placements by id.
inline std::vector<Action> available_actions(const World& w, const ToyState& s) {
  std::vector<Action> out;
  for (auto d : {Direction::North, Direction::South, Direction::East, Direction::West})
    out.push_back(Action::move(d));
  const auto& cfg = w.config();
  const bool holding = w.holding_anything(s);
  bool holding_toy = false;
  for (const auto& l : s.toys) holding_toy |= l.kind == EntityLocation::Kind::Held;

  if (!holding) {
    std::vector<std::string> ids;
    for (std::size_t t = 0; t < cfg.toys.size(); ++t)
      if (s.toys[t] == EntityLocation::cell(s.agent_cell)) ids.push_back(cfg.toys[t].id);
    for (std::size_t k = 0; k < cfg.containers.size(); ++k)
      if (s.containers[k] == EntityLocation::cell(s.agent_cell))
        ids.push_back(cfg.containers[k].id);
    std::sort(ids.begin(), ids.end());
    for (auto& id : ids) out.push_back(Action::pickup(std::move(id)));
  }
  if (holding) out.push_back(Action::put_down());
  if (holding_toy) {
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < cfg.containers.size(); ++k)
      if (s.containers[k] == EntityLocation::cell(s.agent_cell))
        ids.push_back(cfg.containers[k].id);
    std::sort(ids.begin(), ids.end());
    for (auto& id : ids) out.push_back(Action::place_in(std::move(id)));
  }
  return out;
}

/// N(N+1)(N+2)^k for N cells and k toys, saturating at the uint64 maximum.
inline std::uint64_t state_bound(const World& w) {
  using U = unsigned __int128;
  const U limit = std::numeric_limits<std::uint64_t>::max();
  const U n = static_cast<U>(w.cell_count());
  U v = n * (n + 1);
  for (std::size_t i = 0; i < w.toy_count(); ++i) {
    v *= (n + 2);
    if (v > limit) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(v);
}

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Breadth-first closure of s0, in discovery order.
inline std::vector<ToyState> reachable_states(const World& w, const ToyState& s0,
                                              std::size_t cap = kDefaultStateCap) {
  w.validate(s0);
  std::unordered_set<ToyState, ToyStateHash> seen{s0};
  std::vector<ToyState> order{s0};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const ToyState cur = order[head];
    for (const auto& a : available_actions(w, cur)) {
      ToyState nxt = transition(w, cur, a);
      if (seen.insert(nxt).second) {
        if (seen.size() > cap)
          throw Error(ErrorKind::StateExplosion,
                      "more than " + std::to_string(cap) + " reachable states");
        order.push_back(std::move(nxt));
      }
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Propositional functions

struct PropositionalFunction {
  std::string name;
  std::vector<Sort> signature;
  std::function<bool(const World&, const ToyState&, std::span<const std::string>)> evaluator;

  std::size_t arity() const noexcept { return signature.size(); }
};

inline const std::vector<PropositionalFunction>& builtin_functions() {
  static const std::vector<PropositionalFunction> fns = [] {
    using Args = std::span<const std::string>;
    std::vector<PropositionalFunction> v;
    v.push_back({"agent_at", {Sort::Room}, [](const World& w, const ToyState& s, Args a) {
                   return w.room_contains(*w.room_index(a[0]), s.agent_cell);
                 }});
    v.push_back({"agent_at_object", {Sort::Location},
                 [](const World& w, const ToyState& s, Args a) {
                   if (auto t = w.toy_index(a[0])) return w.toy_cell(s, *t) == s.agent_cell;
                   return w.container_cell(s, *w.container_index(a[0])) == s.agent_cell;
                 }});
    v.push_back({"holding", {Sort::Toy}, [](const World& w, const ToyState& s, Args a) {
                   return s.toys[*w.toy_index(a[0])].kind == EntityLocation::Kind::Held;
                 }});
    v.push_back({"in_container", {Sort::Toy, Sort::Container},
                 [](const World& w, const ToyState& s, Args a) {
                   return s.toys[*w.toy_index(a[0])] ==
                          EntityLocation::in_container(*w.container_index(a[1]));
                 }});
    v.push_back({"container_in_room", {Sort::Container, Sort::Room},
                 [](const World& w, const ToyState& s, Args a) {
                   return w.room_contains(*w.room_index(a[1]),
                                          w.container_cell(s, *w.container_index(a[0])));
                 }});
    v.push_back({"has_color", {Sort::Toy, Sort::Color},
                 [](const World& w, const ToyState&, Args a) {
                   return w.config().toys[*w.toy_index(a[0])].color == a[1];
                 }});
    v.push_back({"has_shape", {Sort::Toy, Sort::Shape},
                 [](const World& w, const ToyState&, Args a) {
                   return w.config().toys[*w.toy_index(a[0])].shape == a[1];
                 }});
    return v;
  }();
  return fns;
}

inline const PropositionalFunction* find_function(std::string_view name) {
  for (const auto& f : builtin_functions())
    if (f.name == name) return &f;
  return nullptr;
}

inline bool eval_prop(const World& w, const PropositionalFunction& fn,
                      std::span<const std::string> args, const ToyState& s) {
  if (args.size() != fn.arity())
    throw Error(ErrorKind::ArityMismatch, fn.name + " expects " + std::to_string(fn.arity()) +
                                              " arguments, got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!w.has_sort(fn.signature[i], args[i]))
      throw Error(ErrorKind::SortMismatch, "'" + args[i] + "' is not a " +
                                               std::string(sort_name(fn.signature[i])) +
                                               " (argument " + std::to_string(i) + " of " +
                                               fn.name + ")");
  return fn.evaluator(w, s, args);
}

inline bool eval_prop(const World& w, std::string_view fn, std::span<const std::string> args,
                      const ToyState& s) {
  const auto* f = find_function(fn);
  if (!f) throw Error(ErrorKind::UnresolvableAP, "unknown function '" + std::string(fn) + "'");
  return eval_prop(w, *f, args, s);
}

}  // namespace groundsmith
