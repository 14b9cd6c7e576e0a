#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/error.hpp"
#include "groundsmith/grounding.hpp"

namespace groundsmith {

enum class TaskClass : std::uint8_t {
  MoveTo,
  Pickup,
  PickupColored,
  Ship,
  NavigateOne,
  NavigateTwo,
  NavigateThree,
};

inline constexpr std::array<TaskClass, 7> kAllTaskClasses = {
    TaskClass::MoveTo,      TaskClass::Pickup,      TaskClass::PickupColored, TaskClass::Ship,
    TaskClass::NavigateOne, TaskClass::NavigateTwo, TaskClass::NavigateThree};

inline constexpr std::string_view task_class_name(TaskClass c) {
  switch (c) {
    case TaskClass::MoveTo: return "move_to";
    case TaskClass::Pickup: return "pickup";
    case TaskClass::PickupColored: return "pickup_colored";
    case TaskClass::Ship: return "ship";
    case TaskClass::NavigateOne: return "navigate_one";
    case TaskClass::NavigateTwo: return "navigate_two";
    case TaskClass::NavigateThree: return "navigate_three";
  }
  return "?";
}

inline std::optional<TaskClass> parse_task_class(std::string_view s) {
  for (auto c : kAllTaskClasses)
    if (task_class_name(c) == s) return c;
  return std::nullopt;
}

inline constexpr std::size_t task_arity(TaskClass c) {
  switch (c) {
    case TaskClass::MoveTo:
    case TaskClass::Pickup:
    case TaskClass::NavigateOne: return 1;
    case TaskClass::PickupColored:
    case TaskClass::NavigateTwo: return 2;
    case TaskClass::Ship:
    case TaskClass::NavigateThree: return 3;
  }
  return 0;
}

inline constexpr bool is_navigation(TaskClass c) {
  return c == TaskClass::NavigateOne || c == TaskClass::NavigateTwo ||
         c == TaskClass::NavigateThree;
}

inline std::optional<TaskClass> navigate_class(std::size_t k) {
  switch (k) {
    case 1: return TaskClass::NavigateOne;
    case 2: return TaskClass::NavigateTwo;
    case 3: return TaskClass::NavigateThree;
    default: return std::nullopt;
  }
}

/// Part of speech expected for each parameter slot, in canonical order.
inline std::vector<PosHint> slot_pos(TaskClass c) {
  switch (c) {
    case TaskClass::MoveTo:
    case TaskClass::Pickup: return {PosHint::Noun};
    case TaskClass::PickupColored: return {PosHint::Adjective, PosHint::Noun};
    case TaskClass::Ship: return {PosHint::Noun, PosHint::Noun, PosHint::ProperNoun};
    case TaskClass::NavigateOne:
    case TaskClass::NavigateTwo:
    case TaskClass::NavigateThree: return std::vector<PosHint>(task_arity(c), PosHint::ProperNoun);
  }
  return {};
}

/// Task descriptor plus ordered parameters. Hints are advisory and do not take
/// part in equality.
struct ContextualQuery {
  TaskClass descriptor = TaskClass::MoveTo;
  std::vector<std::string> params;
  std::vector<std::optional<PosHint>> hints;

  std::optional<PosHint> hint(std::size_t i) const {
    return i < hints.size() ? hints[i] : std::nullopt;
  }

  friend bool operator==(const ContextualQuery& a, const ContextualQuery& b) {
    return a.descriptor == b.descriptor && a.params == b.params;
  }
};

inline ContextualQuery make_cq(TaskClass c, std::vector<std::string> params) {
  if (params.size() != task_arity(c))
    throw Error(ErrorKind::ArityMismatch,
                std::string(task_class_name(c)) + " takes " + std::to_string(task_arity(c)) +
                    " parameter(s), got " + std::to_string(params.size()));
  ContextualQuery q{c, std::move(params), {}};
  for (auto h : slot_pos(c)) q.hints.emplace_back(h);
  return q;
}

inline std::string to_string(const ContextualQuery& q) {
  std::string out(task_class_name(q.descriptor));
  out += "(";
  for (std::size_t i = 0; i < q.params.size(); ++i) out += (i ? ", " : "") + q.params[i];
  return out + ")";
}

inline void to_json(nlohmann::json& j, const ContextualQuery& q) {
  j = nlohmann::json{{"descriptor", task_class_name(q.descriptor)}, {"params", q.params}};
}

inline void from_json(const nlohmann::json& j, ContextualQuery& q) {
  auto c = parse_task_class(j.at("descriptor").get<std::string>());
  if (!c) throw Error(ErrorKind::InvalidConfig, "unknown descriptor " + j.at("descriptor").dump());
  q = make_cq(*c, j.at("params").get<std::vector<std::string>>());
}

}  // namespace groundsmith
