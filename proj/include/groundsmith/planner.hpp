#pragma once

// Planning over the product of a Toy world and a progressed formula. The
// formula component is rewritten by progression after every step; reaching
// true is acceptance and pays reward 1.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/error.hpp"
#include "groundsmith/grounding.hpp"
#include "groundsmith/ltl.hpp"
#include "groundsmith/toy_world.hpp"

namespace groundsmith {

namespace detail {

inline Formula progress_raw(const Formula& f, const LabelSet& labels) {
  switch (f.op()) {
    case LtlOp::True:
    case LtlOp::False: return f;
    case LtlOp::Atom: return labels.count(f.name()) ? Formula::truth() : Formula::falsity();
    case LtlOp::Not: return Formula::negation(progress_raw(f.child(), labels));
    case LtlOp::And:
    case LtlOp::Or:
      return Formula::binary(f.op(), progress_raw(f.lhs(), labels), progress_raw(f.rhs(), labels));
    case LtlOp::Finally: return Formula::disjunction(progress_raw(f.child(), labels), f);
    case LtlOp::Globally: return Formula::conjunction(progress_raw(f.child(), labels), f);
    case LtlOp::Until:
      return Formula::disjunction(
          progress_raw(f.rhs(), labels),
          Formula::conjunction(progress_raw(f.lhs(), labels), f));
  }
  return f;
}

/// Sound, incomplete check that d entails e at every position of every
/// finite trace. Only used to drop redundant disjuncts and conjuncts.
inline bool entails(const Formula& d, const Formula& e) {
  if (d == e || e.is_true() || d.is_false()) return true;
  if (e.op() == LtlOp::And) return entails(d, e.lhs()) && entails(d, e.rhs());
  if (e.op() == LtlOp::Or && (entails(d, e.lhs()) || entails(d, e.rhs()))) return true;
  if (d.op() == LtlOp::Or) return entails(d.lhs(), e) && entails(d.rhs(), e);
  if (d.op() == LtlOp::And && (entails(d.lhs(), e) || entails(d.rhs(), e))) return true;
  if (e.op() == LtlOp::Finally) {
    if (entails(d, e.child())) return true;
    // F e holds now once it holds at any later position.
    if (d.op() == LtlOp::Finally && entails(d.child(), e)) return true;
    if (d.op() == LtlOp::Until && entails(d.rhs(), e)) return true;
  }
  if (e.op() == LtlOp::Until && entails(d, e.rhs())) return true;
  if (d.op() == LtlOp::Globally && entails(d.child(), e)) return true;
  return false;
}

using Cube = std::vector<Formula>;

inline void dnf_into(const Formula& f, std::vector<Cube>& out, std::size_t limit, bool& overflow) {
  if (overflow) return;
  switch (f.op()) {
    case LtlOp::True: out.push_back({}); return;
    case LtlOp::False: return;
    case LtlOp::Or:
      dnf_into(f.lhs(), out, limit, overflow);
      dnf_into(f.rhs(), out, limit, overflow);
      break;
    case LtlOp::And: {
      std::vector<Cube> a, b;
      dnf_into(f.lhs(), a, limit, overflow);
      dnf_into(f.rhs(), b, limit, overflow);
      for (const auto& x : a)
        for (const auto& y : b) {
          Cube c = x;
          c.insert(c.end(), y.begin(), y.end());
          out.push_back(std::move(c));
        }
      break;
    }
    default: out.push_back({f}); return;
  }
  if (out.size() > limit) overflow = true;
}

inline bool cube_entails(const Cube& a, const Cube& b) {
  return std::all_of(b.begin(), b.end(), [&](const Formula& e) {
    return std::any_of(a.begin(), a.end(), [&](const Formula& d) { return entails(d, e); });
  });
}

/// Disjunctive normal form over the non-Boolean leaves, with entailed
/// conjuncts and entailing disjuncts removed and both levels sorted by their
/// printed form. Progressed residuals are Boolean combinations of a fixed,
/// finite set of temporal subformulas, so this keeps their number finite.
inline Formula normalize_residual(const Formula& f) {
  constexpr std::size_t kMaxCubes = 512;
  bool overflow = false;
  std::vector<Cube> cubes;
  dnf_into(f, cubes, kMaxCubes, overflow);
  if (overflow) return f;

  auto by_text = [](const Formula& a, const Formula& b) { return format_ltl(a) < format_ltl(b); };
  for (auto& c : cubes) {
    std::sort(c.begin(), c.end(), by_text);
    c.erase(std::unique(c.begin(), c.end()), c.end());
    Cube kept;
    for (std::size_t i = 0; i < c.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < c.size() && !redundant; ++j)
        redundant = j != i && entails(c[j], c[i]) && !(entails(c[i], c[j]) && j > i);
      if (!redundant) kept.push_back(c[i]);
    }
    c = std::move(kept);
  }
  std::vector<Cube> kept;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < cubes.size() && !redundant; ++j)
      redundant = j != i && cube_entails(cubes[i], cubes[j]) && !(cube_entails(cubes[j], cubes[i]) && j > i);
    if (!redundant) kept.push_back(cubes[i]);
  }
  auto conj = [](const Cube& c) {
    if (c.empty()) return Formula::truth();
    Formula out = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) out = Formula::conjunction(out, c[i]);
    return out;
  };
  std::vector<Formula> terms;
  for (const auto& c : kept) terms.push_back(conj(c));
  std::sort(terms.begin(), terms.end(), by_text);
  if (terms.empty()) return Formula::falsity();
  Formula out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) out = Formula::disjunction(out, terms[i]);
  return out;
}

}  // namespace detail

/// Residual obligation after one step labelled `labels`, in normal form.
inline Formula progress(const Formula& f, const LabelSet& labels) {
  return detail::normalize_residual(simplify(detail::progress_raw(f, labels)));
}

/// Iterated progression; true when the residual becomes true at some prefix.
inline bool progression_accepts(const Formula& f, const Trace& t) {
  Formula cur = f;
  for (const auto& step : t) {
    cur = progress(cur, step);
    if (cur.is_true()) return true;
    if (cur.is_false()) return false;
  }
  return false;
}

struct ProductState {
  ToyState env;
  Formula spec;

  friend bool operator==(const ProductState&, const ProductState&) = default;
};

struct ProductStateHash {
  std::size_t operator()(const ProductState& p) const noexcept {
    return ToyStateHash{}(p.env) * 1000003u ^ p.spec.hash();
  }
};

struct ProductEdge {
  Action action;
  std::uint32_t target = 0;
  double reward = 0.0;
};

/// Explicit product MDP. State 0 is the initial state; true and false specs
/// are absorbing and carry no edges.
struct Product {
  std::vector<ProductState> states;
  std::vector<std::uint32_t> offsets{0};  // edges of state i: [offsets[i], offsets[i+1])
  std::vector<ProductEdge> edges;

  std::size_t size() const noexcept { return states.size(); }
  bool absorbing(std::size_t i) const { return states[i].spec.is_true() || states[i].spec.is_false(); }
  std::pair<const ProductEdge*, const ProductEdge*> out(std::size_t i) const {
    return {edges.data() + offsets[i], edges.data() + offsets[i + 1]};
  }
};

/// Labels restricted to a fixed atom list; progression only looks at those.
class AtomLabeler {
 public:
  AtomLabeler(const PropRegistry& reg, const Formula& f) : reg_(reg) {
    for (const auto& a : atoms(f)) {
      const Application& app = reg.resolve(a);
      names_.push_back(a);
      apps_.push_back(&app);
      fns_.push_back(find_function(app.function));
    }
  }

  LabelSet operator()(const ToyState& s) const {
    LabelSet out;
    for (std::size_t i = 0; i < apps_.size(); ++i)
      if (fns_[i]->evaluator(reg_.world(), s, apps_[i]->args)) out.insert(names_[i]);
    return out;
  }

 private:
  const PropRegistry& reg_;
  std::vector<std::string> names_;
  std::vector<const Application*> apps_;
  std::vector<const PropositionalFunction*> fns_;
};

/// Memoized progression keyed by (formula, labels).
class Progressor {
 public:
  Formula operator()(const Formula& f, const LabelSet& labels) {
    std::string key;
    for (const auto& l : labels) key += l + '\n';
    auto& slot = cache_[f];
    auto it = slot.find(key);
    if (it != slot.end()) return it->second;
    Formula r = progress(f, labels);
    slot.emplace(std::move(key), r);
    return r;
  }

 private:
  std::unordered_map<Formula, std::unordered_map<std::string, Formula>> cache_;
};

/// One product transition. Absorbing specs stay put.
inline ProductState product_step(const World& w, const AtomLabeler& label, const ProductState& x,
                                 const Action& a) {
  ToyState next = transition(w, x.env, a);
  if (x.spec.is_true() || x.spec.is_false()) return {next, x.spec};
  return {next, progress(x.spec, label(next))};
}

inline Product build_product(const World& w, const ToyState& s0, const Formula& f,
                             const PropRegistry& reg, std::size_t cap = kDefaultStateCap) {
  w.validate(s0);
  AtomLabeler label(reg, f);
  Progressor prog;
  std::unordered_map<ToyState, LabelSet, ToyStateHash> labels;
  auto labels_of = [&](const ToyState& s) -> const LabelSet& {
    auto it = labels.find(s);
    if (it == labels.end()) it = labels.emplace(s, label(s)).first;
    return it->second;
  };

  Product p;
  std::unordered_map<ProductState, std::uint32_t, ProductStateHash> index;
  auto intern = [&](ProductState x) -> std::uint32_t {
    auto it = index.find(x);
    if (it != index.end()) return it->second;
    if (p.states.size() >= cap)
      throw Error(ErrorKind::StateExplosion, "product exceeds " + std::to_string(cap) + " states");
    auto id = static_cast<std::uint32_t>(p.states.size());
    index.emplace(x, id);
    p.states.push_back(std::move(x));
    return id;
  };

  intern({s0, simplify(prog(simplify(f), labels_of(s0)))});
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    if (!p.absorbing(i)) {
      const ToyState env = p.states[i].env;
      const Formula spec = p.states[i].spec;
      for (const auto& a : available_actions(w, env)) {
        ToyState next = transition(w, env, a);
        Formula nspec = prog(spec, labels_of(next));
        double r = nspec.is_true() ? 1.0 : 0.0;
        std::uint32_t t = intern({std::move(next), nspec});
        p.edges.push_back({a, t, r});
      }
    }
    p.offsets.push_back(static_cast<std::uint32_t>(p.edges.size()));
  }
  return p;
}

inline constexpr double kDefaultGamma = 0.95;
inline constexpr double kDefaultEpsilon = 1e-6;
inline constexpr int kDefaultHorizon = 200;

struct ValueTable {
  std::vector<double> values;
  double gamma = kDefaultGamma;
  double epsilon = kDefaultEpsilon;
  int sweeps = 0;
};

/// Synchronous Bellman sweeps from V = 0 until the largest change is below
/// epsilon. `on_sweep` sees the table after every sweep.
inline ValueTable value_iterate(const Product& p, double gamma = kDefaultGamma,
                                double epsilon = kDefaultEpsilon,
                                const std::function<void(const std::vector<double>&)>& on_sweep = {}) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw Error(ErrorKind::InvalidConfig, "gamma must lie in (0,1)");
  if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidConfig, "epsilon must be positive");
  ValueTable vt{std::vector<double>(p.size(), 0.0), gamma, epsilon, 0};
  std::vector<double> next(p.size(), 0.0);
  for (;;) {
    double delta = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double best = 0.0;
      auto [b, e] = p.out(i);
      for (auto* it = b; it != e; ++it) best = std::max(best, it->reward + gamma * vt.values[it->target]);
      next[i] = best;
      delta = std::max(delta, std::abs(best - vt.values[i]));
    }
    vt.values.swap(next);
    ++vt.sweeps;
    if (on_sweep) on_sweep(vt.values);
    if (delta < epsilon) break;
  }
  return vt;
}

struct PlanOptions {
  double gamma = kDefaultGamma;
  double epsilon = kDefaultEpsilon;
  int horizon = kDefaultHorizon;
  std::size_t cap = kDefaultStateCap;
};

struct PlanResult {
  std::vector<Action> actions;
  std::vector<ProductState> steps;  // initial product state first
  bool accepted = false;
  double wall_time_ms = 0.0;
  std::size_t product_states = 0;
  double start_value = 0.0;
};

/// Greedy rollout over the value table; the first maximizing action in
/// available-action order wins ties.
inline PlanResult plan(const World& w, const ToyState& s0, const Formula& f, const PropRegistry& reg,
                       const PlanOptions& opt = {}) {
  if (opt.horizon <= 0) throw Error(ErrorKind::InvalidConfig, "horizon must be positive");
  auto t0 = std::chrono::steady_clock::now();
  Product p = build_product(w, s0, f, reg, opt.cap);
  ValueTable vt = value_iterate(p, opt.gamma, opt.epsilon);
  PlanResult r;
  r.product_states = p.size();
  r.start_value = vt.values[0];
  std::size_t x = 0;
  r.steps.push_back(p.states[0]);
  while (!p.states[x].spec.is_true()) {
    if (p.states[x].spec.is_false())
      throw Error(ErrorKind::HorizonExceeded, "specification is unsatisfiable from here (dead end)");
    if (static_cast<int>(r.actions.size()) >= opt.horizon)
      throw Error(ErrorKind::HorizonExceeded,
                  "no acceptance within " + std::to_string(opt.horizon) + " steps");
    auto [b, e] = p.out(x);
    const ProductEdge* best = nullptr;
    double best_q = 0.0;
    for (auto* it = b; it != e; ++it) {
      double q = it->reward + opt.gamma * vt.values[it->target];
      if (!best || q > best_q) best = it, best_q = q;
    }
    if (!best || best_q <= 0.0)
      throw Error(ErrorKind::HorizonExceeded, "acceptance unreachable from " + w.digest(p.states[x].env) +
                                                  " with remaining spec " + format_ltl(p.states[x].spec));
    r.actions.push_back(best->action);
    x = best->target;
    r.steps.push_back(p.states[x]);
  }
  r.accepted = true;
  r.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline nlohmann::json plan_to_json(const World& w, const PlanResult& r) {
  nlohmann::json actions = nlohmann::json::array(), steps = nlohmann::json::array();
  for (const auto& a : r.actions) actions.push_back(to_string(a));
  for (const auto& s : r.steps)
    steps.push_back({{"state_digest", w.digest(s.env)}, {"spec", format_ltl(s.spec)}});
  return {{"actions", actions}, {"steps", steps}, {"accepted", r.accepted},
          {"wall_time_ms", r.wall_time_ms}};
}

}  // namespace groundsmith
