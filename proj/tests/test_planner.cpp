#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <random>

#include "support.hpp"

using namespace groundsmith;

namespace {

const PropRegistry& toy_reg() {
  static const PropRegistry r(gs_test::toy_4x1());
  return r;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

// Replays the actions and checks the visited label trace against the
// formula with the recursive finite-trace semantics.
bool replay_satisfies(const World& w, const PropRegistry& reg, const Formula& f, const std::vector<Action>& as) {
  ToyState s = w.initial_state();
  Trace t{gs_test::brute_labels(reg, f, s)};
  for (const auto& a : as) {
    s = transition(w, s, a);
    t.push_back(gs_test::brute_labels(reg, f, s));
  }
  return gs_test::naive_sat(f, t);
}

// Breadth-first distance from the initial product state to any accepting
// one, straight over the product graph.
std::optional<std::size_t> bfs_accept_distance(const Product& p) {
  std::vector<int> dist(p.size(), -1);
  std::deque<std::size_t> q{0};
  dist[0] = 0;
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop_front();
    if (p.states[x].spec.is_true()) return static_cast<std::size_t>(dist[x]);
    auto [b, e] = p.out(x);
    for (auto* it = b; it != e; ++it)
      if (dist[it->target] < 0) {
        dist[it->target] = dist[x] + 1;
        q.push_back(it->target);
      }
  }
  return std::nullopt;
}

}  // namespace

TEST(Progress, Examples) {
  Formula f = parse_ltl("F ( a & F ( b ) )");
  EXPECT_EQ(progress(f, {}), f);
  EXPECT_EQ(progress(f, {"a", "b"}), Formula::truth());
  // F(a & F b) entails F b, so the residual is just F b.
  EXPECT_EQ(progress(f, {"a"}), parse_ltl("F ( b )"));
  EXPECT_EQ(detail::progress_raw(f, {"a"}),
            parse_ltl("( true & ( false | F ( b ) ) ) | F ( a & F ( b ) )"));
  EXPECT_EQ(progress(parse_ltl("a U b"), {"a"}), parse_ltl("a U b"));
  EXPECT_EQ(progress(parse_ltl("a U b"), {}), Formula::falsity());
  EXPECT_EQ(progress(parse_ltl("a U b"), {"b"}), Formula::truth());
  EXPECT_EQ(progress(parse_ltl("G a"), {"a"}), parse_ltl("G a"));
  EXPECT_EQ(progress(parse_ltl("G a"), {}), Formula::falsity());
  EXPECT_EQ(progress(parse_ltl("! a & F b"), {}), parse_ltl("F b"));
  EXPECT_EQ(progress(Formula::truth(), {}), Formula::truth());
}

TEST(Progress, AcceptsExamples) {
  Formula f = parse_ltl("F ( a & F ( b ) )");
  EXPECT_TRUE(progression_accepts(f, {{"a"}, {}, {"b"}}));
  EXPECT_TRUE(progression_accepts(f, {{"a", "b"}}));
  EXPECT_FALSE(progression_accepts(f, {{"b"}, {"a"}}));
  EXPECT_FALSE(progression_accepts(f, {}));
}

TEST(Product, PickupSphereSizeAndSpecs) {
  PropRegistry reg(gs_test::toy_4x1_one_toy());
  const World& w = reg.world();
  Formula f = parse_ltl("F ( holding_sphere )");
  Product p = build_product(w, w.initial_state(), f, reg);
  auto env_count = reachable_states(w, w.initial_state()).size();
  EXPECT_LE(env_count, 120u);
  EXPECT_LE(p.size(), 240u);
  EXPECT_LE(p.size(), 2 * env_count);
  std::set<std::string> specs;
  for (const auto& s : p.states) specs.insert(format_ltl(s.spec));
  EXPECT_EQ(specs, (std::set<std::string>{"F ( holding_sphere )", "true"}));
}

TEST(Product, AbsorbingStatesHaveNoEdges) {
  World w(gs_test::toy_4x1());
  Product p = build_product(w, w.initial_state(), parse_ltl("F ( holding_sphere ) & ! holding_cylinder U bedroom"),
                            toy_reg());
  bool saw_absorbing = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [b, e] = p.out(i);
    if (p.absorbing(i)) {
      saw_absorbing = true;
      EXPECT_EQ(b, e);
    } else {
      EXPECT_NE(b, e);
    }
    for (auto* it = b; it != e; ++it)
      EXPECT_EQ(it->reward, p.states[it->target].spec.is_true() ? 1.0 : 0.0);
  }
  EXPECT_TRUE(saw_absorbing);
  auto vt = value_iterate(p);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.absorbing(i)) EXPECT_EQ(vt.values[i], 0.0);
}

// Two rooms, visit one then the other: the full formula, F(second), true.
TEST(Product, NavigationSpecValues) {
  World w(gs_test::toy_4x1());
  Formula f = parse_ltl("F ( bedroom & F ( kitchen ) )");
  Product p = build_product(w, w.initial_state(), f, toy_reg());
  std::set<std::string> specs;
  for (const auto& s : p.states) specs.insert(format_ltl(s.spec));
  EXPECT_EQ(specs, (std::set<std::string>{format_ltl(f), "F ( kitchen )", "true"}));
}

TEST(ValueIteration, StartValueIsDiscountedDistance) {
  World w(gs_test::toy_4x1());
  Product p = build_product(w, w.initial_state(), parse_ltl("F ( holding_sphere )"), toy_reg());
  auto vt = value_iterate(p);
  EXPECT_NEAR(vt.values[0], std::pow(0.95, 3), 1e-5);
  EXPECT_GT(vt.sweeps, 1);
}

TEST(ValueIteration, SweepsAreMonotone) {
  World w(gs_test::toy_4x1());
  Product p = build_product(w, w.initial_state(),
                            parse_ltl("F ( cylinder_in_box & F ( cylinder_in_box & box_in_bedroom ) )"), toy_reg());
  std::vector<double> prev(p.size(), 0.0);
  int sweeps = 0;
  auto vt = value_iterate(p, 0.95, 1e-6, [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) ASSERT_GE(v[i] + 1e-12, prev[i]);
    for (double x : v) ASSERT_LE(x, 1.0);
    prev = v;
    ++sweeps;
  });
  EXPECT_EQ(sweeps, vt.sweeps);
}

TEST(ValueIteration, RejectsBadParameters) {
  World w(gs_test::toy_4x1());
  Product p = build_product(w, w.initial_state(), parse_ltl("F ( holding_sphere )"), toy_reg());
  EXPECT_EQ(kind_of([&] { value_iterate(p, 1.0); }), ErrorKind::InvalidConfig);
  EXPECT_EQ(kind_of([&] { value_iterate(p, 0.9, 0.0); }), ErrorKind::InvalidConfig);
}

TEST(Plan, PickupSphere) {
  World w(gs_test::toy_4x1());
  Formula f = parse_ltl("F ( holding_sphere )");
  auto r = plan(w, w.initial_state(), f, toy_reg());
  std::vector<std::string> got;
  for (const auto& a : r.actions) got.push_back(to_string(a));
  EXPECT_EQ(got, (std::vector<std::string>{"move(east)", "move(east)", "move(east)", "pickup(sphere)"}));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.steps.size(), 5u);
  EXPECT_TRUE(r.steps.back().spec.is_true());
  EXPECT_TRUE(replay_satisfies(w, toy_reg(), f, r.actions));
  EXPECT_EQ(gs_test::shortest_accepting(w, w.initial_state(), f, toy_reg(), 6), r.actions.size());
}

TEST(Plan, Ship) {
  World w(gs_test::toy_4x1());
  Formula f = parse_ltl("F ( cylinder_in_box & F ( cylinder_in_box & box_in_bedroom ) )");
  auto r = plan(w, w.initial_state(), f, toy_reg());
  EXPECT_TRUE(r.accepted);
  ToyState s = w.initial_state();
  for (const auto& a : r.actions) s = transition(w, s, a);
  std::vector<std::string> args{"box", "bedroom"};
  EXPECT_TRUE(eval_prop(w, "container_in_room", std::span<const std::string>(args), s));
  EXPECT_TRUE(replay_satisfies(w, toy_reg(), f, r.actions));
  EXPECT_EQ(gs_test::shortest_accepting(w, w.initial_state(), f, toy_reg(), 6), r.actions.size());
}

TEST(Plan, NavigateTwoRooms) {
  World w(gs_test::toy_4x1());
  Formula f = parse_ltl("F ( bedroom & F ( kitchen ) )");
  auto r = plan(w, w.initial_state(), f, toy_reg());
  EXPECT_EQ(r.actions.size(), 3u);
  EXPECT_EQ(gs_test::shortest_accepting(w, w.initial_state(), f, toy_reg(), 5), 3u);
}

TEST(Plan, AlreadySatisfiedIsEmpty) {
  World w(gs_test::toy_4x1());
  auto r = plan(w, w.initial_state(), parse_ltl("F ( kitchen )"), toy_reg());
  EXPECT_TRUE(r.actions.empty());
  EXPECT_TRUE(r.accepted);
}

TEST(Plan, Failures) {
  World w(gs_test::toy_4x1());
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), Formula::falsity(), toy_reg()); }), ErrorKind::HorizonExceeded);
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), parse_ltl("G ( kitchen )"), toy_reg()); }),
            ErrorKind::HorizonExceeded);
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), parse_ltl("F ( holding_cylinder & holding_sphere )"), toy_reg()); }),
            ErrorKind::HorizonExceeded);
  PlanOptions short_h;
  short_h.horizon = 3;
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), parse_ltl("F ( holding_sphere )"), toy_reg(), short_h); }),
            ErrorKind::HorizonExceeded);
  PlanOptions tiny;
  tiny.cap = 5;
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), parse_ltl("F ( holding_sphere )"), toy_reg(), tiny); }),
            ErrorKind::StateExplosion);
  EXPECT_EQ(kind_of([&] { plan(w, w.initial_state(), parse_ltl("F ( flying )"), toy_reg()); }),
            ErrorKind::UnresolvableAP);
}

TEST(Plan, JsonShape) {
  World w(gs_test::toy_4x1());
  auto r = plan(w, w.initial_state(), parse_ltl("F ( holding_sphere )"), toy_reg());
  auto j = plan_to_json(w, r);
  EXPECT_EQ(j["actions"].size(), 4u);
  EXPECT_EQ(j["steps"].size(), 5u);
  EXPECT_EQ(j["steps"][0]["state_digest"], "agent@0 box@1 sphere@3 cylinder@0");
  EXPECT_EQ(j["steps"][0]["spec"], "F ( holding_sphere )");
  EXPECT_EQ(j["steps"][4]["spec"], "true");
  EXPECT_TRUE(j["accepted"].get<bool>());
  EXPECT_TRUE(j.contains("wall_time_ms"));
}

// Random co-safe specs over the 4x1 world: the greedy rollout is as short
// as a breadth-first search over the product, and its replayed trace
// satisfies the formula.
TEST(Plan, OptimalAgainstProductBfs) {
  World w(gs_test::toy_4x1());
  gs_test::FormulaGen gen;
  gen.atoms = {"holding_sphere", "at_box", "bedroom", "cylinder_in_box", "box_in_bedroom", "holding_cylinder"};
  gen.allow_g = false;
  gen.allow_constants = false;
  gen.cosafe = true;
  std::mt19937_64 rng(99);
  int planned = 0, infeasible = 0;
  for (int i = 0; i < 150; ++i) {
    Formula f = gen(rng, 1 + i % 3);
    Product p = build_product(w, w.initial_state(), f, toy_reg());
    auto d = bfs_accept_distance(p);
    try {
      auto r = plan(w, w.initial_state(), f, toy_reg());
      ASSERT_TRUE(d.has_value()) << format_ltl(f);
      ASSERT_EQ(r.actions.size(), *d) << format_ltl(f);
      ASSERT_TRUE(replay_satisfies(w, toy_reg(), f, r.actions)) << format_ltl(f);
      ++planned;
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::HorizonExceeded) << format_ltl(f);
      ASSERT_FALSE(d.has_value()) << format_ltl(f);
      ++infeasible;
    }
  }
  EXPECT_GT(planned, 30);
  EXPECT_GT(infeasible, 0);
}

// Shallow specs checked against exhaustive action-sequence search that uses
// only the trace semantics.
TEST(Plan, OptimalAgainstTraceSearch) {
  World w(gs_test::toy_4x1());
  for (const char* s : {"F ( at_box )", "F ( holding_cylinder )", "F ( bedroom )",
                        "F ( holding_cylinder & bedroom )", "F ( at_box ) & F ( bedroom )",
                        "! bedroom U holding_cylinder", "F ( cylinder_in_box )",
                        "F ( holding_sphere | holding_cylinder )"}) {
    Formula f = parse_ltl(s);
    auto r = plan(w, w.initial_state(), f, toy_reg());
    EXPECT_EQ(gs_test::shortest_accepting(w, w.initial_state(), f, toy_reg(), 6), r.actions.size()) << s;
  }
}

TEST(Normalize, PreservesMeaning) {
  gs_test::FormulaGen gen;
  std::mt19937_64 rng(61);
  auto traces = gs_test::all_traces(gen.atoms, 3);
  for (int i = 0; i < 1500; ++i) {
    Formula f = simplify(gen(rng, 1 + i % 5));
    Formula n = detail::normalize_residual(f);
    ASSERT_EQ(detail::normalize_residual(n), n) << format_ltl(f);
    for (const auto& t : traces) ASSERT_EQ(gs_test::naive_sat(f, t), gs_test::naive_sat(n, t)) << format_ltl(f);
    for (int k = 0; k < 20; ++k) {
      Trace t = gs_test::random_trace(rng, 4 + k % 3, gen.atoms);
      ASSERT_EQ(gs_test::naive_sat(f, t), gs_test::naive_sat(n, t)) << format_ltl(f);
    }
  }
}

TEST(Normalize, EntailmentIsSound) {
  gs_test::FormulaGen gen;
  std::mt19937_64 rng(67);
  auto traces = gs_test::all_traces(gen.atoms, 3);
  int hits = 0;
  for (int i = 0; i < 4000; ++i) {
    Formula d = gen(rng, 1 + i % 4), e = gen(rng, 1 + i % 3);
    if (i % 3 == 0) d = Formula::conjunction(d, e);
    if (i % 5 == 0) d = Formula::finally(Formula::conjunction(e, d));
    if (!detail::entails(d, e)) continue;
    ++hits;
    // Entailment must hold at every position, so check every suffix.
    for (const auto& t : traces)
      for (std::size_t k = 0; k < t.size(); ++k)
        if (gs_test::naive_holds(d, t, k)) ASSERT_TRUE(gs_test::naive_holds(e, t, k)) << format_ltl(d) << " => " << format_ltl(e);
  }
  EXPECT_GT(hits, 500);
}

// Progression residuals stay finite: the product closes well under the
// cap for arbitrary specs, G and U included.
TEST(Product, ClosesForRandomSpecs) {
  World w(gs_test::toy_4x1());
  const std::size_t env = reachable_states(w, w.initial_state()).size();
  gs_test::FormulaGen gen;
  gen.atoms = {"holding_sphere", "at_box", "bedroom", "cylinder_in_box", "holding_cylinder"};
  std::mt19937_64 rng(71);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen(rng, 1 + i % 4);
    Product p = build_product(w, w.initial_state(), f, toy_reg(), 200 * env);
    std::set<std::string> specs;
    for (const auto& s : p.states) specs.insert(format_ltl(s.spec));
    ASSERT_LE(specs.size(), 200u) << format_ltl(f);
  }
}
