#pragma once

// One-shot template learning. A grounded formula is lifted by replacing each
// atom with the propositional function it names; the function arguments
// become slots, which are then bound to contextual-query parameter indices by
// matching groundings.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/contextual_query.hpp"
#include "groundsmith/error.hpp"
#include "groundsmith/grounding.hpp"
#include "groundsmith/ltl.hpp"
#include "groundsmith/toy_world.hpp"

namespace groundsmith {

struct Slot {
  bool variable = true;
  std::string id;  // empty for constants
  Sort sort = Sort::Toy;
  Referent referent;  // example referent, or the constant itself

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct SlotAtom {
  std::string function;
  std::vector<Slot> slots;

  friend bool operator==(const SlotAtom&, const SlotAtom&) = default;
};

/// Operator skeleton whose atoms are placeholders keyed into `atoms`.
struct LiftedLtl {
  Formula skeleton;
  std::map<std::string, SlotAtom, std::less<>> atoms;

  std::vector<std::string> slot_ids() const {
    std::vector<std::string> out;
    for (const auto& [_, a] : atoms)
      for (const auto& s : a.slots)
        if (s.variable && std::find(out.begin(), out.end(), s.id) == out.end()) out.push_back(s.id);
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }
};

inline std::string format_slot_atom(const SlotAtom& a) {
  std::string out = a.function + "[";
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    const auto& s = a.slots[i];
    if (i) out += ",";
    out += s.variable ? s.id + ":" + std::string(sort_name(s.sort)) : "=" + s.referent.value;
  }
  return out + "]";
}

/// Readable form, e.g. "F ( holding[v0:toy] & has_color[v0:toy,v1:color] )".
inline std::string format_lifted(const LiftedLtl& l) {
  std::map<std::string, Formula, std::less<>> shown;
  for (const auto& [key, a] : l.atoms) shown.emplace(key, Formula::atom(format_slot_atom(a)));
  return format_ltl(substitute_atoms(l.skeleton, shown));
}

struct TemplatedLtl {
  TaskClass task_class = TaskClass::MoveTo;
  LiftedLtl lifted;
  std::map<std::string, std::size_t> binding;
};

struct MatchOptions {
  /// UnusedParameter is an error when strict, a warning otherwise.
  bool strict = true;
  /// Referents that may stay constant when no parameter mentions them.
  std::set<Referent> background;
  std::vector<std::string>* warnings = nullptr;
};

namespace detail {

inline Sort narrower(Sort a, Sort b) { return a == Sort::Location ? b : a; }

}  // namespace detail

/// Every atom is resolved to (function, args); one Variable slot per distinct
/// referent, numbered v0, v1, ... in first-occurrence order.
inline LiftedLtl lift(const Formula& grounded, const PropRegistry& reg) {
  const World& w = reg.world();
  LiftedLtl out;
  std::map<Referent, std::string> slot_of;
  std::map<std::string, Sort> sort_of;
  std::map<std::string, Formula, std::less<>> subst;
  struct Pending {
    std::string key;
    std::string function;
    std::vector<std::pair<std::string, Referent>> args;
  };
  std::vector<Pending> pending;

  std::vector<std::string> order;
  std::function<void(const Formula&)> visit = [&](const Formula& f) {
    if (f.op() == LtlOp::Atom) {
      if (std::find(order.begin(), order.end(), f.name()) == order.end()) order.push_back(f.name());
      return;
    }
    if (is_unary(f.op())) visit(f.child());
    if (is_binary(f.op())) {
      visit(f.lhs());
      visit(f.rhs());
    }
  };
  visit(grounded);

  for (const auto& ap : order) {
    const Application& app = reg.resolve(ap);
    const auto* fn = find_function(app.function);
    Pending p{"a" + std::to_string(pending.size()), app.function, {}};
    for (std::size_t i = 0; i < app.args.size(); ++i) {
      Sort declared = fn->signature[i];
      Referent r = referent_for_argument(w, declared, app.args[i]);
      auto [it, fresh] = slot_of.emplace(r, "v" + std::to_string(slot_of.size()));
      auto [st, sfresh] = sort_of.emplace(it->second, declared);
      if (!sfresh) st->second = detail::narrower(st->second, declared);
      p.args.emplace_back(it->second, r);
    }
    subst.emplace(ap, Formula::atom(p.key));
    pending.push_back(std::move(p));
  }
  for (auto& p : pending) {
    SlotAtom a{p.function, {}};
    for (auto& [id, r] : p.args) a.slots.push_back({true, id, sort_of.at(id), r});
    out.atoms.emplace(p.key, std::move(a));
  }
  out.skeleton = substitute_atoms(grounded, subst);
  return out;
}

inline std::vector<Referent> ground_params(const ContextualQuery& cq, const GroundingLexicon& lex) {
  if (cq.params.size() != task_arity(cq.descriptor))
    throw Error(ErrorKind::ArityMismatch, to_string(cq) + " does not have " +
                                              std::to_string(task_arity(cq.descriptor)) +
                                              " parameter(s)");
  std::vector<Referent> out;
  for (std::size_t i = 0; i < cq.params.size(); ++i)
    out.push_back(ground_strict(lex, cq.params[i], cq.hint(i)));
  return out;
}

inline void require_distinct(const ContextualQuery& cq, const std::vector<Referent>& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g[i] == g[j])
        throw Error(ErrorKind::NonDistinctGroundings, "'" + cq.params[i] + "' and '" +
                                                          cq.params[j] + "' both ground to " +
                                                          to_string(g[i]));
}

inline TemplatedLtl match_parameters(const ContextualQuery& cq, const LiftedLtl& lifted,
                                     const GroundingLexicon& lex, const MatchOptions& opt = {}) {
  auto groundings = ground_params(cq, lex);
  require_distinct(cq, groundings);
  TemplatedLtl t{cq.descriptor, lifted, {}};
  std::vector<bool> used(groundings.size(), false);
  for (auto& [key, atom] : t.lifted.atoms) {
    for (auto& slot : atom.slots) {
      if (!slot.variable) continue;
      auto it = std::find(groundings.begin(), groundings.end(), slot.referent);
      if (it != groundings.end()) {
        std::size_t idx = static_cast<std::size_t>(it - groundings.begin());
        t.binding[slot.id] = idx;
        used[idx] = true;
      } else if (opt.background.count(slot.referent)) {
        slot.variable = false;
        slot.id.clear();
      } else {
        throw Error(ErrorKind::UnboundSlot, slot.id + " (" + to_string(slot.referent) +
                                                ") matches no parameter of " + to_string(cq));
      }
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) continue;
    std::string msg = "parameter " + std::to_string(i) + " '" + cq.params[i] + "' fills no slot";
    if (opt.strict) throw Error(ErrorKind::UnusedParameter, msg);
    if (opt.warnings) opt.warnings->push_back(std::string(kind_name(ErrorKind::UnusedParameter)) + ": " + msg);
  }
  return t;
}

inline TemplatedLtl learn_template(const ContextualQuery& cq, const Formula& grounded,
                                   const PropRegistry& reg, const GroundingLexicon& lex,
                                   const MatchOptions& opt = {}) {
  return match_parameters(cq, lift(grounded, reg), lex, opt);
}

/// Argument id for a referent filling a slot of the given sort.
inline std::string argument_for(const World& w, const Slot& slot, const Referent& r) {
  auto actual = referent_sort(w, r);
  if (!actual || !sort_accepts(slot.sort, *actual))
    throw Error(ErrorKind::SortMismatch, to_string(r) + " cannot fill a " +
                                             std::string(sort_name(slot.sort)) + " slot");
  return r.value;
}

inline Formula instantiate(const TemplatedLtl& t, const ContextualQuery& cq, const PropRegistry& reg,
                           const GroundingLexicon& lex) {
  if (cq.descriptor != t.task_class)
    throw Error(ErrorKind::DescriptorMismatch, "template is " +
                                                   std::string(task_class_name(t.task_class)) +
                                                   ", query is " + to_string(cq));
  auto groundings = ground_params(cq, lex);
  const World& w = reg.world();
  std::map<std::string, Formula, std::less<>> subst;
  for (const auto& [key, atom] : t.lifted.atoms) {
    std::vector<std::string> args;
    for (const auto& slot : atom.slots) {
      if (!slot.variable) {
        args.push_back(argument_for(w, slot, slot.referent));
        continue;
      }
      auto b = t.binding.find(slot.id);
      if (b == t.binding.end()) throw Error(ErrorKind::UnboundSlot, slot.id + " has no binding");
      args.push_back(argument_for(w, slot, groundings.at(b->second)));
    }
    subst.emplace(key, Formula::atom(reg.name_of(atom.function, args)));
  }
  return substitute_atoms(t.lifted.skeleton, subst);
}

// ---------------------------------------------------------------------------
// Library

class TemplateLibrary {
 public:
  /// Returns true when an existing template for the class was replaced.
  bool put(TemplatedLtl t) {
    auto c = t.task_class;
    bool replaced = templates_.count(c) != 0;
    templates_.insert_or_assign(c, std::move(t));
    return replaced;
  }
  const TemplatedLtl* find(TaskClass c) const {
    auto it = templates_.find(c);
    return it == templates_.end() ? nullptr : &it->second;
  }
  const TemplatedLtl& at(TaskClass c) const {
    const auto* t = find(c);
    if (!t) throw Error(ErrorKind::MissingTemplate, std::string(task_class_name(c)));
    return *t;
  }
  std::size_t size() const noexcept { return templates_.size(); }
  bool empty() const noexcept { return templates_.empty(); }
  const std::map<TaskClass, TemplatedLtl>& templates() const noexcept { return templates_; }

 private:
  std::map<TaskClass, TemplatedLtl> templates_;
};

inline constexpr int kLibrarySchemaVersion = 1;

namespace detail {

inline nlohmann::json slot_to_json(const Slot& s) {
  nlohmann::json j{{"sort", sort_name(s.sort)}, {"referent", s.referent}};
  if (s.variable) j["var"] = s.id;
  return j;
}

inline nlohmann::json lifted_tree(const Formula& f, const LiftedLtl& l) {
  switch (f.op()) {
    case LtlOp::True: return {{"op", "true"}};
    case LtlOp::False: return {{"op", "false"}};
    case LtlOp::Atom: {
      const SlotAtom& a = l.atoms.find(f.name())->second;
      nlohmann::json slots = nlohmann::json::array();
      for (const auto& s : a.slots) slots.push_back(slot_to_json(s));
      return {{"op", "slot_atom"}, {"function", a.function}, {"slots", slots}};
    }
    default: break;
  }
  nlohmann::json j{{"op", op_symbol(f.op())}};
  if (is_unary(f.op())) {
    j["child"] = lifted_tree(f.child(), l);
  } else {
    j["lhs"] = lifted_tree(f.lhs(), l);
    j["rhs"] = lifted_tree(f.rhs(), l);
  }
  return j;
}

[[noreturn]] inline void corrupt(const std::string& msg) { throw Error(ErrorKind::CorruptLibrary, msg); }

inline Formula read_tree(const nlohmann::json& j, LiftedLtl& l,
                         std::map<std::string, std::string>& seen) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) corrupt("node without op");
  const std::string op = j["op"].get<std::string>();
  if (op == "true") return Formula::truth();
  if (op == "false") return Formula::falsity();
  if (op == "slot_atom") {
    SlotAtom a;
    a.function = j.at("function").get<std::string>();
    const auto* fn = find_function(a.function);
    if (!fn) corrupt("unknown function '" + a.function + "'");
    const auto& slots = j.at("slots");
    if (!slots.is_array() || slots.size() != fn->arity())
      corrupt(a.function + " needs " + std::to_string(fn->arity()) + " slots");
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& sj = slots[i];
      Slot s;
      auto sort = parse_sort(sj.at("sort").get<std::string>());
      if (!sort) corrupt("unknown sort " + sj.at("sort").dump());
      if (!sort_accepts(fn->signature[i], *sort))
        corrupt(std::string(sort_name(*sort)) + " slot in " + std::string(sort_name(fn->signature[i])) +
                " position of " + a.function);
      s.sort = *sort;
      try {
        s.referent = referent_from_json(sj.at("referent"));
      } catch (const Error& e) {
        corrupt(e.detail());
      }
      s.variable = sj.contains("var");
      if (s.variable) s.id = sj["var"].get<std::string>();
      a.slots.push_back(std::move(s));
    }
    std::string sig = j.dump();
    auto it = seen.find(sig);
    if (it == seen.end()) {
      std::string key = "a" + std::to_string(l.atoms.size());
      it = seen.emplace(sig, key).first;
      l.atoms.emplace(key, std::move(a));
    }
    return Formula::atom(it->second);
  }
  LtlOp code;
  if (op == "!") code = LtlOp::Not;
  else if (op == "F") code = LtlOp::Finally;
  else if (op == "G") code = LtlOp::Globally;
  else if (op == "&") code = LtlOp::And;
  else if (op == "|") code = LtlOp::Or;
  else if (op == "U") code = LtlOp::Until;
  else corrupt("unknown operator '" + op + "'");
  if (is_unary(code)) return Formula::unary(code, read_tree(j.at("child"), l, seen));
  return Formula::binary(code, read_tree(j.at("lhs"), l, seen), read_tree(j.at("rhs"), l, seen));
}

}  // namespace detail

inline nlohmann::json template_to_json(const TemplatedLtl& t) {
  return {{"task_class", task_class_name(t.task_class)},
          {"formula", detail::lifted_tree(t.lifted.skeleton, t.lifted)},
          {"binding", t.binding}};
}

inline TemplatedLtl template_from_json(const nlohmann::json& j) {
  try {
    TemplatedLtl t;
    auto c = parse_task_class(j.at("task_class").get<std::string>());
    if (!c) detail::corrupt("unknown task class " + j.at("task_class").dump());
    t.task_class = *c;
    std::map<std::string, std::string> seen;
    t.lifted.skeleton = detail::read_tree(j.at("formula"), t.lifted, seen);
    t.binding = j.at("binding").get<std::map<std::string, std::size_t>>();
    auto ids = t.lifted.slot_ids();
    for (const auto& id : ids) {
      auto b = t.binding.find(id);
      if (b == t.binding.end()) detail::corrupt("slot " + id + " is unbound");
      if (b->second >= task_arity(t.task_class))
        detail::corrupt("slot " + id + " bound to index " + std::to_string(b->second));
    }
    for (const auto& [id, _] : t.binding)
      if (std::find(ids.begin(), ids.end(), id) == ids.end())
        detail::corrupt("binding for unknown slot " + id);
    return t;
  } catch (const nlohmann::json::exception& e) {
    detail::corrupt(e.what());
  }
}

/// Structural equality via the serialized form.
inline bool same_template(const TemplatedLtl& a, const TemplatedLtl& b) {
  return template_to_json(a) == template_to_json(b);
}

inline nlohmann::json library_to_json(const TemplateLibrary& lib) {
  nlohmann::json templates = nlohmann::json::object();
  for (const auto& [c, t] : lib.templates()) templates[std::string(task_class_name(c))] = template_to_json(t);
  return {{"schema_version", kLibrarySchemaVersion}, {"templates", templates}};
}

inline TemplateLibrary library_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || j.value("schema_version", -1) != kLibrarySchemaVersion)
      detail::corrupt("missing or unsupported schema_version");
    TemplateLibrary lib;
    for (const auto& [name, tj] : j.at("templates").items()) {
      auto t = template_from_json(tj);
      if (task_class_name(t.task_class) != name)
        detail::corrupt("template keyed '" + name + "' has class " +
                        std::string(task_class_name(t.task_class)));
      lib.put(std::move(t));
    }
    return lib;
  } catch (const nlohmann::json::exception& e) {
    detail::corrupt(e.what());
  }
}

inline void save_library(const TemplateLibrary& lib, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << library_to_json(lib).dump(2) << "\n";
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

inline TemplateLibrary load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    detail::corrupt(path + ": " + e.what());
  }
  return library_from_json(j);
}

}  // namespace groundsmith
