#pragma once

// Symbol <-> world mapping. The grounding lexicon takes surface tokens to
// referents; the proposition registry names every well-sorted application of
// a propositional function and keeps the reverse index used to lift grounded
// formulas; label_state is the labeling function over Toy states.

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/error.hpp"
#include "groundsmith/ltl.hpp"
#include "groundsmith/toy_world.hpp"

namespace groundsmith {

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

enum class PosHint : std::uint8_t { Noun, Adjective, ProperNoun };

inline std::string_view pos_hint_name(PosHint p) {
  switch (p) {
    case PosHint::Noun: return "noun";
    case PosHint::Adjective: return "adjective";
    case PosHint::ProperNoun: return "proper-noun";
  }
  return "?";
}

inline std::optional<PosHint> parse_pos_hint(std::string_view s) {
  for (auto p : {PosHint::Noun, PosHint::Adjective, PosHint::ProperNoun})
    if (pos_hint_name(p) == s) return p;
  return std::nullopt;
}

enum class ReferentKind : std::uint8_t { Object, Room, Color, Shape, ContainerKind };

inline std::string_view referent_kind_name(ReferentKind k) {
  switch (k) {
    case ReferentKind::Object: return "object";
    case ReferentKind::Room: return "room";
    case ReferentKind::Color: return "color";
    case ReferentKind::Shape: return "shape";
    case ReferentKind::ContainerKind: return "container-kind";
  }
  return "?";
}

inline std::optional<ReferentKind> parse_referent_kind(std::string_view s) {
  for (auto k : {ReferentKind::Object, ReferentKind::Room, ReferentKind::Color,
                 ReferentKind::Shape, ReferentKind::ContainerKind})
    if (referent_kind_name(k) == s) return k;
  return std::nullopt;
}

/// What a word denotes: an object or room id, or an attribute value.
struct Referent {
  ReferentKind kind = ReferentKind::Object;
  std::string value;

  friend auto operator<=>(const Referent&, const Referent&) = default;
};

inline std::string to_string(const Referent& r) {
  return std::string(referent_kind_name(r.kind)) + ":" + r.value;
}

inline void to_json(nlohmann::json& j, const Referent& r) {
  j = nlohmann::json{{"kind", referent_kind_name(r.kind)}, {"value", r.value}};
}

inline Referent referent_from_json(const nlohmann::json& j) {
  auto kind = parse_referent_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorKind::InvalidConfig, "unknown referent kind " + j.at("kind").dump());
  return {*kind, j.at("value").get<std::string>()};
}

/// Concrete sort of a referent in a world; nullopt for referents that cannot
/// fill a propositional-function argument.
inline std::optional<Sort> referent_sort(const World& w, const Referent& r) {
  switch (r.kind) {
    case ReferentKind::Object:
      if (w.toy_index(r.value)) return Sort::Toy;
      if (w.container_index(r.value)) return Sort::Container;
      return std::nullopt;
    case ReferentKind::Room:
      return w.room_index(r.value) ? std::optional(Sort::Room) : std::nullopt;
    case ReferentKind::Color:
      return w.has_sort(Sort::Color, r.value) ? std::optional(Sort::Color) : std::nullopt;
    case ReferentKind::Shape:
      return w.has_sort(Sort::Shape, r.value) ? std::optional(Sort::Shape) : std::nullopt;
    case ReferentKind::ContainerKind:
      return std::nullopt;
  }
  return std::nullopt;
}

/// Referent denoted by a propositional-function argument of the given sort.
inline Referent referent_for_argument(const World& w, Sort sort, const std::string& value) {
  switch (sort) {
    case Sort::Room: return {ReferentKind::Room, value};
    case Sort::Color: return {ReferentKind::Color, value};
    case Sort::Shape: return {ReferentKind::Shape, value};
    case Sort::Location:
    case Sort::Toy:
    case Sort::Container:
    case Sort::Agent:
      break;
  }
  (void)w;
  return {ReferentKind::Object, value};
}

// ---------------------------------------------------------------------------
// Lexicon

struct LexiconEntry {
  std::string token;
  PosHint hint = PosHint::Noun;
  Referent referent;
};

class GroundingLexicon {
 public:
  GroundingLexicon() = default;
  explicit GroundingLexicon(std::vector<LexiconEntry> entries) {
    for (auto& e : entries) add(std::move(e));
  }

  /// Tokens are stored lowercased; (token, hint) pairs must be unique.
  void add(LexiconEntry e) {
    e.token = to_lower(e.token);
    if (e.token.empty()) throw Error(ErrorKind::InvalidConfig, "empty lexicon token");
    for (std::size_t i : lookup(e.token))
      if (entries_[i].hint == e.hint)
        throw Error(ErrorKind::InvalidConfig, "duplicate lexicon entry '" + e.token + "' (" +
                                                  std::string(pos_hint_name(e.hint)) + ")");
    by_token_[e.token].push_back(entries_.size());
    entries_.push_back(std::move(e));
  }

  bool contains(std::string_view token, PosHint hint) const {
    for (std::size_t i : lookup(to_lower(token)))
      if (entries_[i].hint == hint) return true;
    return false;
  }

  /// Entries whose token matches, case-insensitively.
  std::vector<const LexiconEntry*> matches(std::string_view token) const {
    std::vector<const LexiconEntry*> out;
    for (std::size_t i : lookup(to_lower(token))) out.push_back(&entries_[i]);
    return out;
  }

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t vocabulary_size() const noexcept { return by_token_.size(); }

  /// Throws InvalidConfig if some referent does not exist in the world.
  void validate_against(const World& w) const {
    for (const auto& e : entries_) {
      bool ok = false;
      switch (e.referent.kind) {
        case ReferentKind::Object:
          ok = w.toy_index(e.referent.value) || w.container_index(e.referent.value);
          break;
        case ReferentKind::Room: ok = w.room_index(e.referent.value).has_value(); break;
        case ReferentKind::Color: ok = w.has_sort(Sort::Color, e.referent.value); break;
        case ReferentKind::Shape: ok = w.has_sort(Sort::Shape, e.referent.value); break;
        case ReferentKind::ContainerKind:
          ok = std::any_of(w.config().containers.begin(), w.config().containers.end(),
                           [&](const ContainerSpec& c) { return c.kind == e.referent.value; });
          break;
      }
      if (!ok)
        throw Error(ErrorKind::InvalidConfig,
                    "lexicon referent " + to_string(e.referent) + " not in world");
    }
  }

 private:
  const std::vector<std::size_t>& lookup(const std::string& lowered) const {
    static const std::vector<std::size_t> none;
    auto it = by_token_.find(lowered);
    return it == by_token_.end() ? none : it->second;
  }

  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_token_;
};

inline nlohmann::json lexicon_to_json(const GroundingLexicon& lex) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : lex.entries())
    arr.push_back({{"token", e.token}, {"pos", pos_hint_name(e.hint)}, {"referent", e.referent}});
  return arr;
}

inline GroundingLexicon lexicon_from_json(const nlohmann::json& j) {
  GroundingLexicon lex;
  try {
    for (const auto& e : j) {
      auto hint = parse_pos_hint(e.at("pos").get<std::string>());
      if (!hint) throw Error(ErrorKind::InvalidConfig, "unknown pos " + e.at("pos").dump());
      lex.add({e.at("token").get<std::string>(), *hint, referent_from_json(e.at("referent"))});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("lexicon: ") + e.what());
  }
  return lex;
}

/// Default lexicon for a world: entity labels as nouns, room labels as proper
/// nouns, colors as adjectives. A shape (or container kind) word that is not
/// already an entity noun denotes the single object with that attribute when
/// it is unique, and the attribute value otherwise.
inline GroundingLexicon lexicon_from_world(const World& w) {
  GroundingLexicon lex;
  const auto& cfg = w.config();
  for (const auto& t : cfg.toys) lex.add({t.label, PosHint::Noun, {ReferentKind::Object, t.id}});
  for (const auto& c : cfg.containers)
    lex.add({c.label, PosHint::Noun, {ReferentKind::Object, c.id}});
  for (const auto& r : cfg.rooms)
    lex.add({r.label, PosHint::ProperNoun, {ReferentKind::Room, r.id}});
  for (const auto& c : w.colors())
    lex.add({c, PosHint::Adjective, {ReferentKind::Color, c}});
  for (const auto& s : w.shapes()) {
    if (lex.contains(s, PosHint::Noun)) continue;
    std::vector<std::string> owners;
    for (const auto& t : cfg.toys)
      if (t.shape == s) owners.push_back(t.id);
    lex.add({s, PosHint::Noun,
             owners.size() == 1 ? Referent{ReferentKind::Object, owners[0]}
                                : Referent{ReferentKind::Shape, s}});
  }
  std::set<std::string> kinds;
  for (const auto& c : cfg.containers) kinds.insert(c.kind);
  for (const auto& k : kinds) {
    if (lex.contains(k, PosHint::Noun)) continue;
    std::vector<std::string> owners;
    for (const auto& c : cfg.containers)
      if (c.kind == k) owners.push_back(c.id);
    lex.add({k, PosHint::Noun,
             owners.size() == 1 ? Referent{ReferentKind::Object, owners[0]}
                                : Referent{ReferentKind::ContainerKind, k}});
  }
  return lex;
}

enum class Resolution : std::uint8_t { Unambiguous, DisambiguatedByPos, Ambiguous };

inline std::string_view resolution_name(Resolution r) {
  switch (r) {
    case Resolution::Unambiguous: return "unambiguous";
    case Resolution::DisambiguatedByPos: return "disambiguated-by-pos";
    case Resolution::Ambiguous: return "ambiguous";
  }
  return "?";
}

struct GroundingResult {
  /// First candidate when ambiguous.
  Referent referent;
  Resolution resolution = Resolution::Unambiguous;
  std::vector<Referent> candidates;
};

inline GroundingResult ground_token(const GroundingLexicon& lex, std::string_view token,
                                    std::optional<PosHint> hint = std::nullopt) {
  auto found = lex.matches(token);
  if (found.empty()) throw Error(ErrorKind::UnknownToken, "'" + std::string(token) + "'");
  GroundingResult r;
  if (found.size() == 1) {
    r.referent = found[0]->referent;
    r.candidates = {r.referent};
    return r;
  }
  if (hint) {
    for (const auto* e : found) {
      if (e->hint == *hint) {
        r.referent = e->referent;
        r.resolution = Resolution::DisambiguatedByPos;
        r.candidates = {r.referent};
        return r;
      }
    }
  }
  r.resolution = Resolution::Ambiguous;
  for (const auto* e : found) r.candidates.push_back(e->referent);
  r.referent = r.candidates.front();
  return r;
}

/// Strict grounding: ambiguity is an error listing every candidate.
inline Referent ground_strict(const GroundingLexicon& lex, std::string_view token,
                              std::optional<PosHint> hint = std::nullopt) {
  auto g = ground_token(lex, token, hint);
  if (g.resolution == Resolution::Ambiguous) {
    std::string detail = "'" + std::string(token) + "' could denote";
    for (const auto& c : g.candidates) detail += " " + to_string(c);
    throw Error(ErrorKind::AmbiguousGrounding, detail);
  }
  return g.referent;
}

// ---------------------------------------------------------------------------
// Atomic proposition naming

/// Surface name of a propositional-function application, given argument
/// labels: in_container(cylinder, box) is "cylinder_in_box", agent_at(park)
/// is "park", holding(sphere) is "holding_sphere".
inline std::string canonical_ap_name(std::string_view fn, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorKind::ArityMismatch, std::string(fn) + " takes " + std::to_string(n) +
                                                " argument(s), got " + std::to_string(args.size()));
  };
  if (args.empty()) throw Error(ErrorKind::ArityMismatch, "no arguments for " + std::string(fn));
  if (fn == "agent_at") return need(1), args[0];
  if (fn == "agent_at_object") return need(1), "at_" + args[0];
  if (fn == "holding") return need(1), "holding_" + args[0];
  if (fn == "in_container") return need(2), args[0] + "_in_" + args[1];
  if (fn == "container_in_room") return need(2), args[0] + "_in_" + args[1];
  if (fn == "has_color" || fn == "has_shape") return need(2), args[0] + "_is_" + args[1];
  throw Error(ErrorKind::UnresolvableAP, "no naming rule for function '" + std::string(fn) + "'");
}

struct Application {
  std::string function;
  std::vector<std::string> args;

  friend bool operator==(const Application&, const Application&) = default;
};

/// Every well-sorted application of the built-in functions in one world, with
/// the name <-> application index. Immutable after construction.
class PropRegistry {
 public:
  explicit PropRegistry(std::shared_ptr<const World> world) : world_(std::move(world)) {
    for (const auto& fn : builtin_functions()) {
      std::vector<std::string> args;
      enumerate(fn, 0, args);
    }
  }
  explicit PropRegistry(const WorldConfig& cfg)
      : PropRegistry(std::make_shared<const World>(cfg)) {}

  const World& world() const noexcept { return *world_; }
  std::shared_ptr<const World> world_ptr() const noexcept { return world_; }
  const std::vector<PropositionalFunction>& functions() const { return builtin_functions(); }
  const std::vector<std::pair<std::string, Application>>& applications() const { return apps_; }

  /// Inverse of name_of.
  const Application& resolve(std::string_view ap) const {
    auto it = index_.find(std::string(ap));
    if (it == index_.end())
      throw Error(ErrorKind::UnresolvableAP, "'" + std::string(ap) + "' names no proposition");
    return apps_[it->second].second;
  }

  bool contains(std::string_view ap) const { return index_.count(std::string(ap)) != 0; }

  /// AP name for an application given by argument ids.
  std::string name_of(std::string_view fn, const std::vector<std::string>& args) const {
    const auto* f = find_function(fn);
    if (!f) throw Error(ErrorKind::UnresolvableAP, "unknown function '" + std::string(fn) + "'");
    if (args.size() != f->arity())
      throw Error(ErrorKind::ArityMismatch, f->name + " expects " + std::to_string(f->arity()) +
                                                " arguments");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!world_->has_sort(f->signature[i], args[i]))
        throw Error(ErrorKind::SortMismatch, "'" + args[i] + "' is not a " +
                                                 std::string(sort_name(f->signature[i])));
      labels.push_back(world_->label_of(f->signature[i], args[i]));
    }
    return canonical_ap_name(fn, labels);
  }

 private:
  void domain(Sort s, std::vector<std::string>& out) const {
    const auto& cfg = world_->config();
    switch (s) {
      case Sort::Agent: out.push_back("agent"); break;
      case Sort::Toy:
        for (const auto& t : cfg.toys) out.push_back(t.id);
        break;
      case Sort::Container:
        for (const auto& c : cfg.containers) out.push_back(c.id);
        break;
      case Sort::Room:
        for (const auto& r : cfg.rooms) out.push_back(r.id);
        break;
      case Sort::Location:
        for (const auto& t : cfg.toys) out.push_back(t.id);
        for (const auto& c : cfg.containers) out.push_back(c.id);
        break;
      case Sort::Color: out = world_->colors(); break;
      case Sort::Shape: out = world_->shapes(); break;
    }
  }

  void enumerate(const PropositionalFunction& fn, std::size_t pos, std::vector<std::string>& args) {
    if (pos == fn.arity()) {
      std::string name = name_of(fn.name, args);
      if (!is_valid_atom_name(name))
        throw Error(ErrorKind::InvalidConfig, "proposition name '" + name + "' is not an atom");
      auto [it, inserted] = index_.emplace(name, apps_.size());
      if (!inserted) {
        const auto& other = apps_[it->second].second;
        throw Error(ErrorKind::NameCollision, "'" + name + "' names both " + fn.name + " and " +
                                                  other.function);
      }
      apps_.emplace_back(std::move(name), Application{fn.name, args});
      return;
    }
    std::vector<std::string> dom;
    domain(fn.signature[pos], dom);
    for (const auto& v : dom) {
      args.push_back(v);
      enumerate(fn, pos + 1, args);
      args.pop_back();
    }
  }

  std::shared_ptr<const World> world_;
  std::vector<std::pair<std::string, Application>> apps_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline const Application& resolve_ap(const PropRegistry& reg, std::string_view name) {
  return reg.resolve(name);
}

/// Labeling function: every proposition true in s.
inline LabelSet label_state(const PropRegistry& reg, const ToyState& s) {
  const World& w = reg.world();
  w.validate(s);
  LabelSet out;
  for (const auto& [name, app] : reg.applications()) {
    const auto* fn = find_function(app.function);
    if (fn->evaluator(w, s, app.args)) out.insert(name);
  }
  return out;
}

}  // namespace groundsmith
