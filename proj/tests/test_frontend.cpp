#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace groundsmith;

namespace {

struct Fixture {
  World toy{gs_test::toy_4x1()};
  World city{gs_test::city()};
  World hom{gs_test::homonym_world()};
  GroundingLexicon toy_lex = lexicon_from_world(toy);
  GroundingLexicon city_lex = lexicon_from_world(city);
  GroundingLexicon hom_lex = lexicon_from_world(hom);
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

std::string tags_str(const std::vector<TaggedToken>& ts) {
  std::string out;
  for (const auto& t : ts) out += (out.empty() ? "" : " ") + t.token + "/" + std::string(pos_name(t.pos));
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST(Tokenize, LowercasesAndSplitsPunctuation) {
  EXPECT_EQ(tokenize_text("Go to CVS, then   park!"),
            (std::vector<std::string>{"go", "to", "cvs", "then", "park"}));
  EXPECT_TRUE(tokenize_text(" ,. ").empty());
}

TEST(Tag, Basic) {
  EXPECT_EQ(tags_str(tag_tokens("pick up the red sphere", fx().toy_lex)),
            "pick/verb up/function-word the/function-word red/adjective sphere/noun");
  EXPECT_EQ(tags_str(tag_tokens("go to CVS", fx().city_lex)), "go/verb to/function-word cvs/proper-noun");
  EXPECT_EQ(tags_str(tag_tokens("fetch the zebra", fx().toy_lex)),
            "fetch/verb the/function-word zebra/unknown");
}

TEST(Tag, HomonymsByContext) {
  EXPECT_EQ(tags_str(tag_tokens("pick up the orange ball", fx().hom_lex)),
            "pick/verb up/function-word the/function-word orange/adjective ball/noun");
  EXPECT_EQ(tags_str(tag_tokens("pick up the orange", fx().hom_lex)),
            "pick/verb up/function-word the/function-word orange/noun");
  EXPECT_EQ(tag_tokens("go to the bag", fx().hom_lex).back().pos, Pos::Noun);
}

TEST(Tag, PickupFault) {
  auto normal = tag_tokens("pickup the sphere", fx().toy_lex);
  EXPECT_EQ(normal[0].pos, Pos::Verb);
  auto faulty = tag_tokens("pickup the sphere", fx().toy_lex, {true, true});
  EXPECT_EQ(faulty[0].pos, Pos::Noun);
  // The fault only touches that one spelling.
  EXPECT_EQ(tag_tokens("pick up the sphere", fx().toy_lex, {true, true})[0].pos, Pos::Verb);
}

TEST(Classify, Examples) {
  auto cls = [](const char* text, const GroundingLexicon& lex) { return classify_task(tag_tokens(text, lex)); };
  EXPECT_EQ(cls("pick up the sphere", fx().toy_lex), TaskClass::Pickup);
  EXPECT_EQ(cls("grab the red sphere", fx().toy_lex), TaskClass::PickupColored);
  EXPECT_EQ(cls("go to the box", fx().toy_lex), TaskClass::MoveTo);
  EXPECT_EQ(cls("put the cylinder in the box, then put the box in the bedroom", fx().toy_lex),
            TaskClass::Ship);
  EXPECT_EQ(cls("go to CVS", fx().city_lex), TaskClass::NavigateOne);
  EXPECT_EQ(cls("go to CVS and then go to park", fx().city_lex), TaskClass::NavigateTwo);
  EXPECT_EQ(cls("visit park then visit store then visit museum", fx().city_lex), TaskClass::NavigateThree);
  EXPECT_EQ(cls("go to kitchen", fx().toy_lex), TaskClass::NavigateOne);
}

TEST(Classify, Unclassifiable) {
  for (const char* text : {"", "the sphere", "sing a song", "go to CVS then sing", "put the sphere",
                           "go to CVS then go to park then go to store then go to museum"}) {
    EXPECT_EQ(kind_of([&] { classify_task(tag_tokens(text, fx().city_lex)); }),
              ErrorKind::UnclassifiableUtterance)
        << text;
  }
  // Two put clauses without a back-reference are not a ship command.
  EXPECT_EQ(kind_of([&] {
              classify_task(tag_tokens("put the sphere in the box, then put the cylinder in the bedroom",
                                       fx().toy_lex));
            }),
            ErrorKind::UnclassifiableUtterance);
}

TEST(Extract, Examples) {
  EXPECT_EQ(extract_cq("pick up the sphere", fx().toy_lex), make_cq(TaskClass::Pickup, {"sphere"}));
  EXPECT_EQ(extract_cq("pick up the red sphere", fx().toy_lex),
            make_cq(TaskClass::PickupColored, {"red", "sphere"}));
  EXPECT_EQ(extract_cq("put the cylinder in the box, then put the box in the bedroom", fx().toy_lex),
            make_cq(TaskClass::Ship, {"cylinder", "box", "bedroom"}));
  EXPECT_EQ(extract_cq("Go to CVS, then go to park", fx().city_lex),
            make_cq(TaskClass::NavigateTwo, {"cvs", "park"}));
  EXPECT_EQ(to_string(extract_cq("pick up the sphere", fx().toy_lex)), "pickup(sphere)");
}

TEST(Extract, SlotHints) {
  auto q = extract_cq("put the sphere in the bag then bring the bag to the bag", fx().hom_lex);
  ASSERT_EQ(q, make_cq(TaskClass::Ship, {"sphere", "bag", "bag"}));
  EXPECT_EQ(q.hint(1), PosHint::Noun);
  EXPECT_EQ(q.hint(2), PosHint::ProperNoun);
  auto off = extract_cq("put the sphere in the bag then bring the bag to the bag", fx().hom_lex, {false, false});
  EXPECT_EQ(off.hint(1), std::nullopt);
  EXPECT_EQ(off.hint(2), std::nullopt);
}

TEST(Extract, PickupFaultIsArityMismatch) {
  EXPECT_EQ(kind_of([] { extract_cq("pickup the sphere", fx().toy_lex, {true, true}); }),
            ErrorKind::ArityMismatch);
  EXPECT_EQ(extract_cq("pick up the sphere", fx().toy_lex, {true, true}), make_cq(TaskClass::Pickup, {"sphere"}));
}

TEST(ContextualQuery, ArityAndJson) {
  EXPECT_EQ(kind_of([] { make_cq(TaskClass::Ship, {"a", "b"}); }), ErrorKind::ArityMismatch);
  for (TaskClass c : kAllTaskClasses) {
    EXPECT_EQ(parse_task_class(task_class_name(c)), c);
    std::vector<std::string> p;
    for (std::size_t i = 0; i < task_arity(c); ++i) p.push_back("w" + std::to_string(i));
    auto q = make_cq(c, p);
    EXPECT_EQ(nlohmann::json(q).get<ContextualQuery>(), q);
    EXPECT_EQ(slot_pos(c).size(), task_arity(c));
  }
}

// Every phrasing with every admissible distinct fill from the toy world
// recovers the class and the fills in order.
TEST(Extract, PhrasingsRecoverFillsProperty) {
  const std::vector<std::string> toys{"sphere", "cylinder"}, containers{"box"}, colors{"red", "blue"},
      rooms{"kitchen", "bedroom"}, places{"cvs", "park", "store", "museum"};
  std::size_t checked = 0;
  auto check = [&](TaskClass c, const std::vector<std::string>& fills, const GroundingLexicon& lex) {
    for (const auto& p : phrasings(c)) {
      std::string text = render_phrasing(p, fills);
      ContextualQuery q = extract_cq(text, lex);
      ASSERT_EQ(q.descriptor, c) << text;
      ASSERT_EQ(q.params, fills) << text;
      ++checked;
    }
  };
  for (const auto& t : toys) check(TaskClass::Pickup, {t}, fx().toy_lex);
  for (const auto& t : toys) check(TaskClass::MoveTo, {t}, fx().toy_lex);
  check(TaskClass::MoveTo, {"box"}, fx().toy_lex);
  for (const auto& c : colors)
    for (const auto& t : toys) check(TaskClass::PickupColored, {c, t}, fx().toy_lex);
  for (const auto& t : toys)
    for (const auto& k : containers)
      for (const auto& r : rooms) check(TaskClass::Ship, {t, k, r}, fx().toy_lex);
  for (const auto& a : places) {
    check(TaskClass::NavigateOne, {a}, fx().city_lex);
    for (const auto& b : places) {
      if (b == a) continue;
      check(TaskClass::NavigateTwo, {a, b}, fx().city_lex);
      for (const auto& c : places)
        if (c != a && c != b) check(TaskClass::NavigateThree, {a, b, c}, fx().city_lex);
    }
  }
  EXPECT_GT(checked, 150u);
}
