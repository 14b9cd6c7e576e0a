#pragma once

// Deterministic front-end: lexicon-driven tagging, rule-based task
// classification and ordered parameter extraction.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "groundsmith/contextual_query.hpp"
#include "groundsmith/error.hpp"
#include "groundsmith/grounding.hpp"

namespace groundsmith {

enum class Pos : std::uint8_t { Verb, Noun, Adjective, ProperNoun, FunctionWord, Unknown };

inline std::string_view pos_name(Pos p) {
  switch (p) {
    case Pos::Verb: return "verb";
    case Pos::Noun: return "noun";
    case Pos::Adjective: return "adjective";
    case Pos::ProperNoun: return "proper-noun";
    case Pos::FunctionWord: return "function-word";
    case Pos::Unknown: return "unknown";
  }
  return "?";
}

struct TaggedToken {
  std::string token;
  Pos pos = Pos::Unknown;

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct FrontendOptions {
  /// Pass slot part-of-speech hints to the grounding function.
  bool pos_disambiguation = true;
  /// Reproduce the tagger fault where "pickup" is read as a noun.
  bool pickup_as_noun = false;
};

namespace lexicon_words {

using WordSet = std::unordered_set<std::string_view>;

inline const WordSet& function_words() {
  static const WordSet s{"the", "a",    "an",   "to",   "in",   "into", "inside", "on",
                         "onto", "at",  "of",   "and",  "then", "it",   "up",     "down",
                         "from", "with", "over", "toward", "towards", "please", "next"};
  return s;
}
inline const WordSet& pickup_verbs() {
  static const WordSet s{"pick", "pickup", "grab", "lift", "fetch"};
  return s;
}
inline const WordSet& put_verbs() {
  static const WordSet s{"put", "place", "drop", "set", "insert"};
  return s;
}
inline const WordSet& transport_verbs() {
  static const WordSet s{"put", "place", "move", "bring", "carry", "take"};
  return s;
}
inline const WordSet& movement_verbs() {
  static const WordSet s{"go",   "move",   "navigate", "approach", "head", "walk",
                         "travel", "proceed", "visit",  "reach",    "drive"};
  return s;
}
inline const WordSet& containment_preps() {
  static const WordSet s{"in", "into", "inside"};
  return s;
}

inline bool is_verb(std::string_view w) {
  return pickup_verbs().count(w) || put_verbs().count(w) || transport_verbs().count(w) ||
         movement_verbs().count(w);
}

}  // namespace lexicon_words

/// Lowercased tokens; anything other than [a-z0-9_] separates.
inline std::vector<std::string> tokenize_text(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '_') {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<TaggedToken> tag_tokens(std::string_view text, const GroundingLexicon& lex,
                                           const FrontendOptions& opt = {}) {
  auto words = tokenize_text(text);
  auto has = [&](std::size_t i, PosHint h) { return i < words.size() && lex.contains(words[i], h); };
  std::vector<TaggedToken> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    Pos pos = Pos::Unknown;
    if (opt.pickup_as_noun && w == "pickup") {
      pos = Pos::Noun;
    } else if (auto found = lex.matches(w); !found.empty()) {
      bool noun = has(i, PosHint::Noun), adj = has(i, PosHint::Adjective),
           proper = has(i, PosHint::ProperNoun);
      bool next_nominal = has(i + 1, PosHint::Noun);
      if (adj && (next_nominal || (!noun && !proper))) pos = Pos::Adjective;
      else if (noun) pos = Pos::Noun;
      else if (proper) pos = Pos::ProperNoun;
      else pos = Pos::Adjective;
    } else if (lexicon_words::function_words().count(w)) {
      pos = Pos::FunctionWord;
    } else if (lexicon_words::is_verb(w)) {
      pos = Pos::Verb;
    }
    out.push_back({w, pos});
  }
  return out;
}

namespace detail {

inline bool is_content(Pos p) {
  return p == Pos::Noun || p == Pos::Adjective || p == Pos::ProperNoun || p == Pos::Unknown;
}

/// Clause boundaries: "then" (absorbing a preceding "and") and "and" directly
/// followed by a verb.
inline std::vector<std::vector<TaggedToken>> split_clauses(const std::vector<TaggedToken>& tags) {
  std::vector<std::vector<TaggedToken>> clauses(1);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto& t = tags[i];
    bool boundary = false;
    if (t.token == "then") {
      if (!clauses.back().empty() && clauses.back().back().token == "and") clauses.back().pop_back();
      boundary = true;
    } else if (t.token == "and" && i + 1 < tags.size() && tags[i + 1].token != "then" &&
               lexicon_words::is_verb(tags[i + 1].token)) {
      boundary = true;
    }
    if (boundary) {
      if (!clauses.back().empty()) clauses.emplace_back();
    } else {
      clauses.back().push_back(t);
    }
  }
  if (clauses.back().empty()) clauses.pop_back();
  return clauses;
}

/// First token of the clause whose form is a known verb. The form decides,
/// not the tag, so a mistagged verb still classifies.
inline std::string_view clause_verb(const std::vector<TaggedToken>& clause) {
  for (const auto& t : clause)
    if (lexicon_words::is_verb(t.token)) return t.token;
  return {};
}

inline std::vector<TaggedToken> content(const std::vector<TaggedToken>& clause) {
  std::vector<TaggedToken> out;
  for (const auto& t : clause)
    if (is_content(t.pos)) out.push_back(t);
  return out;
}

inline bool verb_in(std::string_view v, const lexicon_words::WordSet& set) {
  return !v.empty() && set.count(v) != 0;
}

inline bool is_ship(const std::vector<std::vector<TaggedToken>>& clauses) {
  if (clauses.size() != 2) return false;
  if (!verb_in(clause_verb(clauses[0]), lexicon_words::put_verbs())) return false;
  if (!verb_in(clause_verb(clauses[1]), lexicon_words::transport_verbs())) return false;
  bool prep = std::any_of(clauses[0].begin(), clauses[0].end(), [](const TaggedToken& t) {
    return lexicon_words::containment_preps().count(t.token) != 0;
  });
  auto c1 = content(clauses[0]), c2 = content(clauses[1]);
  return prep && !c1.empty() && !c2.empty() && c2.front().token == c1.back().token;
}

}  // namespace detail

inline TaskClass classify_task(const std::vector<TaggedToken>& tags) {
  using namespace detail;
  auto clauses = split_clauses(tags);
  auto fail = [&]() -> TaskClass {
    std::string text;
    for (const auto& t : tags) text += (text.empty() ? "" : " ") + t.token;
    throw Error(ErrorKind::UnclassifiableUtterance, "'" + text + "'");
  };
  if (clauses.empty()) return fail();
  if (is_ship(clauses)) return TaskClass::Ship;
  if (clauses.size() == 1) {
    auto verb = clause_verb(clauses[0]);
    auto c = content(clauses[0]);
    if (verb_in(verb, lexicon_words::pickup_verbs())) {
      for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i].pos == Pos::Adjective && c[i + 1].pos == Pos::Noun) return TaskClass::PickupColored;
      return TaskClass::Pickup;
    }
    if (verb_in(verb, lexicon_words::movement_verbs()) && !c.empty() && c.front().pos == Pos::Noun)
      return TaskClass::MoveTo;
  }
  if (auto nav = navigate_class(clauses.size())) {
    bool ok = std::all_of(clauses.begin(), clauses.end(), [](const auto& clause) {
      auto c = content(clause);
      return verb_in(clause_verb(clause), lexicon_words::movement_verbs()) && !c.empty() &&
             std::all_of(c.begin(), c.end(),
                         [](const TaggedToken& t) { return t.pos == Pos::ProperNoun; });
    });
    if (ok) return *nav;
  }
  return fail();
}

inline ContextualQuery extract_cq(std::string_view text, const GroundingLexicon& lex,
                                  const FrontendOptions& opt = {}) {
  using namespace detail;
  auto tags = tag_tokens(text, lex, opt);
  TaskClass cls = classify_task(tags);
  auto clauses = split_clauses(tags);
  std::vector<std::string> params;
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    auto c = content(clauses[k]);
    // The second ship clause restates the container first.
    std::size_t skip = (cls == TaskClass::Ship && k == 1) ? 1 : 0;
    for (std::size_t i = skip; i < c.size(); ++i) params.push_back(c[i].token);
  }
  ContextualQuery q = make_cq(cls, std::move(params));
  if (!opt.pos_disambiguation) q.hints.assign(q.params.size(), std::nullopt);
  return q;
}

}  // namespace groundsmith
