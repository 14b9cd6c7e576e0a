#pragma once

// Test-side oracles and generators. Nothing here calls the code under test
// for the property being checked.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "groundsmith/groundsmith.hpp"

#ifndef GROUNDSMITH_DATA_DIR
#define GROUNDSMITH_DATA_DIR "data"
#endif

namespace groundsmith {
inline void PrintTo(const Formula& f, std::ostream* os) { *os << format_ltl(f); }
}  // namespace groundsmith

namespace gs_test {

using namespace groundsmith;

inline std::string data_path(const std::string& rel) { return std::string(GROUNDSMITH_DATA_DIR) + "/" + rel; }

/// The two-room 4x1 world used for the planning demonstrations.
inline WorldConfig toy_4x1() {
  WorldConfig w;
  w.grid_width = 4;
  w.grid_height = 1;
  w.agent_start = 0;
  w.toys = {{"sphere", "sphere", "red", 3, ""}, {"cylinder", "cylinder", "blue", 0, ""}};
  w.containers = {{"box", "box", 1, ""}};
  w.rooms = {{"kitchen", {0, 1}, ""}, {"bedroom", {2, 3}, ""}};
  return w;
}

/// The 4x1 world with only the sphere and the box, k = 1.
inline WorldConfig toy_4x1_one_toy() {
  WorldConfig w = toy_4x1();
  w.toys.pop_back();
  return w;
}

/// Navigation world whose room ids differ from their labels.
inline WorldConfig city() {
  WorldConfig w;
  w.grid_width = 3;
  w.grid_height = 2;
  w.agent_start = 1;
  w.rooms = {{"loc_cvs", {0}, "CVS"}, {"loc_park", {2}, "park"}, {"loc_store", {3}, "store"},
             {"loc_museum", {5}, "museum"}};
  return w;
}

/// World with both homonyms: "orange" (color and fruit) and "bag"
/// (container and room).
inline WorldConfig homonym_world() {
  WorldConfig w;
  w.grid_width = 3;
  w.grid_height = 2;
  w.agent_start = 0;
  w.toys = {{"toy_sphere", "sphere", "red", 1, "sphere"},
            {"toy_orange_fruit", "fruit", "orange", 2, "orange"},
            {"toy_ball", "ball", "green", 4, "ball"}};
  w.containers = {{"bag", "bag", 3, ""}, {"box", "box", 5, ""}};
  w.rooms = {{"kitchen", {0, 1, 2}, ""}, {"bag_room", {3, 4, 5}, "bag"}};
  w.colors = {"red", "orange", "green", "blue"};
  return w;
}

// ---------------------------------------------------------------------------
// Finite-trace satisfaction, straight from the definitions.

inline bool naive_holds(const Formula& f, const Trace& t, std::size_t i) {
  switch (f.op()) {
    case LtlOp::True: return true;
    case LtlOp::False: return false;
    case LtlOp::Atom: return t[i].count(f.name()) != 0;
    case LtlOp::Not: return !naive_holds(f.child(), t, i);
    case LtlOp::And: return naive_holds(f.lhs(), t, i) && naive_holds(f.rhs(), t, i);
    case LtlOp::Or: return naive_holds(f.lhs(), t, i) || naive_holds(f.rhs(), t, i);
    case LtlOp::Finally:
      for (std::size_t j = i; j < t.size(); ++j)
        if (naive_holds(f.child(), t, j)) return true;
      return false;
    case LtlOp::Globally:
      for (std::size_t j = i; j < t.size(); ++j)
        if (!naive_holds(f.child(), t, j)) return false;
      return true;
    case LtlOp::Until:
      for (std::size_t j = i; j < t.size(); ++j) {
        if (naive_holds(f.rhs(), t, j)) return true;
        if (!naive_holds(f.lhs(), t, j)) return false;
      }
      return false;
  }
  return false;
}

inline bool naive_sat(const Formula& f, const Trace& t) { return naive_holds(f, t, 0); }

// ---------------------------------------------------------------------------
// Generators

struct FormulaGen {
  std::vector<std::string> atoms{"a", "b", "c"};
  bool allow_g = true;
  bool allow_constants = true;
  /// Negation only over temporal-free subformulas.
  bool cosafe = false;

  Formula operator()(std::mt19937_64& rng, int depth) const {
    std::uniform_int_distribution<int> pick(0, 9);
    if (depth <= 0 || pick(rng) < 2) return leaf(rng);
    for (;;) {
      switch (std::uniform_int_distribution<int>(0, 6)(rng)) {
        case 0: {
          Formula c = (*this)(rng, depth - 1);
          if (cosafe && contains_temporal(c)) continue;
          return Formula::negation(c);
        }
        case 1: return Formula::conjunction((*this)(rng, depth - 1), (*this)(rng, depth - 1));
        case 2: return Formula::disjunction((*this)(rng, depth - 1), (*this)(rng, depth - 1));
        case 3: return Formula::finally((*this)(rng, depth - 1));
        case 4:
          if (!allow_g) continue;
          return Formula::globally((*this)(rng, depth - 1));
        case 5: return Formula::until((*this)(rng, depth - 1), (*this)(rng, depth - 1));
        default: return leaf(rng);
      }
    }
  }

  Formula leaf(std::mt19937_64& rng) const {
    int n = static_cast<int>(atoms.size()) + (allow_constants ? 2 : 0);
    int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (k < static_cast<int>(atoms.size())) return Formula::atom(atoms[k]);
    return k == static_cast<int>(atoms.size()) ? Formula::truth() : Formula::falsity();
  }
};

inline Trace random_trace(std::mt19937_64& rng, std::size_t len, const std::vector<std::string>& atoms) {
  Trace t(len);
  for (auto& step : t)
    for (const auto& a : atoms)
      if (rng() & 1) step.insert(a);
  return t;
}

/// All traces of length 1..max_len over the atoms.
inline std::vector<Trace> all_traces(const std::vector<std::string>& atoms, std::size_t max_len) {
  std::vector<Trace> out;
  const std::size_t labels = std::size_t{1} << atoms.size();
  std::function<void(Trace&)> rec = [&](Trace& t) {
    if (!t.empty()) out.push_back(t);
    if (t.size() == max_len) return;
    for (std::size_t m = 0; m < labels; ++m) {
      LabelSet l;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (m >> k & 1) l.insert(atoms[k]);
      t.push_back(l);
      rec(t);
      t.pop_back();
    }
  };
  Trace t;
  rec(t);
  return out;
}

// ---------------------------------------------------------------------------
// Shortest accepting plan by exhaustive search over action sequences. A
// sequence of d actions is accepting when the label trace of the d+1 visited
// states satisfies f; no product construction or progression involved.

inline LabelSet brute_labels(const PropRegistry& reg, const Formula& f, const ToyState& s) {
  LabelSet out;
  for (const auto& a : atoms(f)) {
    const Application& app = reg.resolve(a);
    if (eval_prop(reg.world(), app.function, app.args, s)) out.insert(a);
  }
  return out;
}

inline std::optional<std::size_t> shortest_accepting(const World& w, const ToyState& s0, const Formula& f,
                                                     const PropRegistry& reg, std::size_t max_depth) {
  for (std::size_t d = 0; d <= max_depth; ++d) {
    Trace trace{brute_labels(reg, f, s0)};
    std::function<bool(const ToyState&)> dfs = [&](const ToyState& s) -> bool {
      if (trace.size() == d + 1) return naive_sat(f, trace);
      for (const auto& a : available_actions(w, s)) {
        ToyState n = transition(w, s, a);
        trace.push_back(brute_labels(reg, f, n));
        bool ok = dfs(n);
        trace.pop_back();
        if (ok) return true;
      }
      return false;
    };
    if (dfs(s0)) return d;
  }
  return std::nullopt;
}

}  // namespace gs_test
