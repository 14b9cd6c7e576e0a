#pragma once

// Corpus generation and the evaluation harness. Records are expanded from
// phrasing templates and pairwise-distinct fills, then subsampled to fixed
// per-class counts with a seeded selection sampler.

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/contextual_query.hpp"
#include "groundsmith/corpus_vocab.hpp"
#include "groundsmith/error.hpp"
#include "groundsmith/frontend.hpp"
#include "groundsmith/grounding.hpp"
#include "groundsmith/ltl.hpp"
#include "groundsmith/templates.hpp"
#include "groundsmith/toy_world.hpp"

namespace groundsmith {

enum class Split : std::uint8_t { Seen, Unseen };
enum class Domain : std::uint8_t { Manipulation, Navigation };

inline std::string_view split_name(Split s) { return s == Split::Seen ? "seen" : "unseen"; }
inline std::optional<Split> parse_split(std::string_view s) {
  if (s == "seen") return Split::Seen;
  if (s == "unseen") return Split::Unseen;
  return std::nullopt;
}
inline std::string_view domain_name(Domain d) {
  return d == Domain::Manipulation ? "manipulation" : "navigation";
}
inline std::optional<Domain> parse_domain(std::string_view s) {
  if (s == "manipulation") return Domain::Manipulation;
  if (s == "navigation") return Domain::Navigation;
  return std::nullopt;
}

inline std::vector<TaskClass> domain_classes(Domain d) {
  if (d == Domain::Manipulation)
    return {TaskClass::MoveTo, TaskClass::Pickup, TaskClass::PickupColored, TaskClass::Ship};
  return {TaskClass::NavigateOne, TaskClass::NavigateTwo, TaskClass::NavigateThree};
}

/// Records per class in each split.
inline std::size_t target_count(Split s, TaskClass c) {
  const bool seen = s == Split::Seen;
  switch (c) {
    case TaskClass::MoveTo: return seen ? 150 : 36;
    case TaskClass::Pickup: return seen ? 450 : 108;
    case TaskClass::PickupColored: return seen ? 2700 : 648;
    case TaskClass::Ship: return seen ? 1350 : 972;
    case TaskClass::NavigateOne: return seen ? 51 : 18;
    case TaskClass::NavigateTwo: return seen ? 612 : 72;
    case TaskClass::NavigateThree: return seen ? 7344 : 288;
  }
  return 0;
}

struct SplitVocab {
  std::vector<std::string> colors, containers, rooms, toys, locations;
};

inline SplitVocab split_vocab(Split s) {
  if (s == Split::Seen)
    return {vocab::seen_colors(), vocab::seen_containers(), vocab::seen_rooms(), vocab::seen_toys(),
            vocab::seen_locations()};
  return {vocab::unseen_colors(), vocab::unseen_containers(), vocab::unseen_rooms(),
          vocab::unseen_toys(), vocab::unseen_locations()};
}

// The seen world carries two homonyms: "orange" is a color and a fruit toy,
// "bag" is a container and a room.
inline constexpr const char* kHomonymToyId = "toy_orange_fruit";
inline constexpr const char* kHomonymToyLabel = "orange";
inline constexpr const char* kHomonymToyShape = "fruit";
inline constexpr const char* kHomonymRoomId = "bag_room";
inline constexpr const char* kHomonymRoomLabel = "bag";

inline constexpr int kCorpusGridSide = 10;

/// The world every record of a split is grounded in. Toy ids, labels and
/// shapes are the vocabulary word itself.
inline WorldConfig corpus_world_config(Split s) {
  const SplitVocab v = split_vocab(s);
  WorldConfig w;
  w.grid_width = w.grid_height = kCorpusGridSide;
  const int n = w.grid_width * w.grid_height;
  for (std::size_t i = 0; i < v.toys.size(); ++i)
    w.toys.push_back({v.toys[i], v.toys[i], v.colors[i % v.colors.size()], static_cast<int>(i % n), v.toys[i]});
  for (std::size_t i = 0; i < v.containers.size(); ++i)
    w.containers.push_back({v.containers[i], v.containers[i], static_cast<int>((i * 7) % n), v.containers[i]});
  int r = 0;
  for (const auto& words : {v.rooms, v.locations})
    for (const auto& word : words) w.rooms.push_back({word, {r++ % n}, word});
  if (s == Split::Seen) {
    w.toys.push_back({kHomonymToyId, kHomonymToyShape, kHomonymToyLabel, 0, kHomonymToyLabel});
    w.rooms.push_back({kHomonymRoomId, {r % n}, kHomonymRoomLabel});
  }
  w.colors = v.colors;
  return w;
}

struct CorpusRecord {
  std::string id;
  Split split = Split::Seen;
  TaskClass task_class = TaskClass::MoveTo;
  std::string text;
  ContextualQuery gold_cq;
  std::string gold_ltl;
};

inline nlohmann::ordered_json record_to_json(const CorpusRecord& r) {
  nlohmann::ordered_json cq;
  cq["descriptor"] = task_class_name(r.gold_cq.descriptor);
  cq["params"] = r.gold_cq.params;
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["split"] = split_name(r.split);
  j["task_class"] = task_class_name(r.task_class);
  j["text"] = r.text;
  j["gold_cq"] = std::move(cq);
  j["gold_ltl"] = r.gold_ltl;
  return j;
}

inline CorpusRecord record_from_json(const nlohmann::json& j) {
  try {
    CorpusRecord r;
    r.id = j.at("id").get<std::string>();
    auto split = parse_split(j.at("split").get<std::string>());
    auto cls = parse_task_class(j.at("task_class").get<std::string>());
    if (!split || !cls) throw Error(ErrorKind::InvalidConfig, "record " + r.id + ": bad split or class");
    r.split = *split;
    r.task_class = *cls;
    r.text = j.at("text").get<std::string>();
    r.gold_cq = j.at("gold_cq").get<ContextualQuery>();
    r.gold_ltl = j.at("gold_ltl").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("corpus record: ") + e.what());
  }
}

inline void write_jsonl(const std::vector<CorpusRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

inline std::vector<CorpusRecord> read_jsonl(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidConfig, "corpus line " + std::to_string(n) + ": " + e.what());
    }
    out.push_back(record_from_json(j));
  }
  return out;
}

/// Phrasings per class; {i} is the i-th contextual-query parameter.
inline const std::vector<std::string>& phrasings(TaskClass c) {
  static const std::map<TaskClass, std::vector<std::string>> table{
      {TaskClass::MoveTo,
       {"move to the {0}", "go to the {0}", "navigate to the {0}", "approach the {0}"}},
      {TaskClass::Pickup, {"pick up the {0}", "pickup the {0}", "grab the {0}"}},
      {TaskClass::PickupColored, {"pick up the {0} {1}", "pickup the {0} {1}", "grab the {0} {1}"}},
      {TaskClass::Ship,
       {"put the {0} in the {1}, then put the {1} in the {2}",
        "place the {0} into the {1} and then move the {1} to the {2}",
        "put the {0} in the {1} then bring the {1} to the {2}"}},
      {TaskClass::NavigateOne, {"go to {0}", "visit {0}", "navigate to {0}", "head to {0}"}},
      {TaskClass::NavigateTwo,
       {"go to {0} and then go to {1}", "visit {0} then visit {1}",
        "navigate to {0}, then head to {1}", "head to {0} and then visit {1}"}},
      {TaskClass::NavigateThree,
       {"go to {0}, then go to {1}, then go to {2}", "visit {0} then visit {1} then visit {2}",
        "navigate to {0} and then navigate to {1} and then navigate to {2}",
        "head to {0}, then visit {1} and then go to {2}"}},
  };
  return table.at(c);
}

inline std::string render_phrasing(const std::string& pattern, const std::vector<std::string>& params) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{' && i + 2 < pattern.size() && pattern[i + 2] == '}') {
      out += params.at(static_cast<std::size_t>(pattern[i + 1] - '0'));
      i += 2;
    } else {
      out += pattern[i];
    }
  }
  return out;
}

/// Gold grounded formula, atoms named from the parameter words (which are
/// the entity labels in the corpus worlds).
inline Formula gold_formula(TaskClass c, const std::vector<std::string>& p) {
  auto A = [](const std::string& fn, std::vector<std::string> args) {
    return Formula::atom(canonical_ap_name(fn, args));
  };
  auto F = [](const Formula& f) { return Formula::finally(f); };
  auto And = [](const Formula& a, const Formula& b) { return Formula::conjunction(a, b); };
  if (p.size() != task_arity(c)) throw Error(ErrorKind::ArityMismatch, "gold formula arity");
  switch (c) {
    case TaskClass::MoveTo: return F(A("agent_at_object", {p[0]}));
    case TaskClass::Pickup: return F(A("holding", {p[0]}));
    case TaskClass::PickupColored:
      return F(And(A("holding", {p[1]}), A("has_color", {p[1], p[0]})));
    case TaskClass::Ship: {
      Formula in = A("in_container", {p[0], p[1]});
      return F(And(in, F(And(in, A("container_in_room", {p[1], p[2]})))));
    }
    case TaskClass::NavigateOne:
    case TaskClass::NavigateTwo:
    case TaskClass::NavigateThree: {
      Formula f = F(A("agent_at", {p.back()}));
      for (std::size_t i = p.size() - 1; i-- > 0;) f = F(And(A("agent_at", {p[i]}), f));
      return f;
    }
  }
  return Formula::truth();
}

struct GenOptions {
  /// Allow words with more than one lexicon reading, and the homonym
  /// entities themselves, as fills.
  bool homonyms = false;
};

namespace detail {

inline std::vector<std::vector<std::string>> fill_pools(TaskClass c, const SplitVocab& v) {
  std::vector<std::string> objects = v.toys;
  objects.insert(objects.end(), v.containers.begin(), v.containers.end());
  switch (c) {
    case TaskClass::MoveTo: return {objects};
    case TaskClass::Pickup: return {v.toys};
    case TaskClass::PickupColored: return {v.colors, v.toys};
    case TaskClass::Ship: return {v.toys, v.containers, v.rooms};
    case TaskClass::NavigateOne: return {v.locations};
    case TaskClass::NavigateTwo: return {v.locations, v.locations};
    case TaskClass::NavigateThree: return {v.locations, v.locations, v.locations};
  }
  return {};
}

/// Selection sampling: n of m indices, ascending, from raw 64-bit draws.
inline std::vector<std::size_t> select_indices(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t t = 0; t < m && out.size() < n; ++t) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (static_cast<double>(m - t) * u < static_cast<double>(n - out.size())) out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline std::vector<CorpusRecord> generate_corpus(Split split, Domain domain, std::uint64_t seed,
                                                 const GenOptions& opt = {}) {
  SplitVocab v = split_vocab(split);
  if (split == Split::Seen) {
    if (opt.homonyms) {
      v.toys.push_back(kHomonymToyLabel);
      v.rooms.push_back(kHomonymRoomLabel);
    } else {
      World w(corpus_world_config(split));
      GroundingLexicon lex = lexicon_from_world(w);
      auto keep = [&](std::vector<std::string>& words) {
        std::erase_if(words, [&](const std::string& word) { return lex.matches(word).size() > 1; });
      };
      for (auto* words : {&v.colors, &v.containers, &v.rooms, &v.toys, &v.locations}) keep(*words);
    }
  }

  std::vector<CorpusRecord> out;
  for (TaskClass c : domain_classes(domain)) {
    const auto pools = detail::fill_pools(c, v);
    const auto& phr = phrasings(c);
    // Mixed-radix tuple indices whose words are pairwise distinct.
    std::size_t tuples = 1;
    for (const auto& pool : pools) tuples *= pool.size();
    std::vector<std::uint32_t> valid;
    std::vector<std::string> fill(pools.size());
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rest = t;
      bool distinct = true;
      for (std::size_t k = pools.size(); k-- > 0;) {
        fill[k] = pools[k][rest % pools[k].size()];
        rest /= pools[k].size();
      }
      for (std::size_t a = 0; a < fill.size() && distinct; ++a)
        for (std::size_t b = a + 1; b < fill.size(); ++b)
          if (fill[a] == fill[b]) distinct = false;
      if (distinct) valid.push_back(static_cast<std::uint32_t>(t));
    }
    const std::size_t m = valid.size() * phr.size();
    const std::size_t n = target_count(split, c);
    if (m < n)
      throw Error(ErrorKind::InsufficientVocabulary,
                  std::string(task_class_name(c)) + " has " + std::to_string(m) +
                      " combinations, needs " + std::to_string(n));
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c)};
    std::mt19937_64 rng(seq);
    std::size_t serial = 0;
    for (std::size_t idx : detail::select_indices(n, m, rng)) {
      std::size_t rest = valid[idx / phr.size()];
      for (std::size_t k = pools.size(); k-- > 0;) {
        fill[k] = pools[k][rest % pools[k].size()];
        rest /= pools[k].size();
      }
      char id[96];
      std::snprintf(id, sizeof id, "%s-%s-%05zu", std::string(split_name(split)).c_str(),
                    std::string(task_class_name(c)).c_str(), serial++);
      CorpusRecord r;
      r.id = id;
      r.split = split;
      r.task_class = c;
      r.text = render_phrasing(phr[idx % phr.size()], fill);
      r.gold_cq = make_cq(c, fill);
      r.gold_ltl = format_ltl(gold_formula(c, fill));
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Seeded, order-stable subset of n records (a training set drawn from a
/// seen corpus). Template training needs one record per class; the subset
/// only matters for sizing experiments.
inline std::vector<CorpusRecord> sample_subset(const std::vector<CorpusRecord>& records, std::size_t n,
                                               std::uint64_t seed) {
  if (n > records.size())
    throw Error(ErrorKind::InsufficientVocabulary,
                "subset of " + std::to_string(n) + " from " + std::to_string(records.size()) + " records");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xabcdu};
  std::mt19937_64 rng(seq);
  std::vector<CorpusRecord> out;
  for (std::size_t i : detail::select_indices(n, records.size(), rng)) out.push_back(records[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline and metrics

struct PipelineOptions {
  bool pos_disambiguation = true;
  bool pickup_as_noun = false;
  /// Feed the gold contextual query instead of running the front-end.
  bool use_gold_cq = false;
};

struct PipelineResult {
  std::optional<ContextualQuery> cq;
  std::optional<std::string> ltl;
  bool cq_correct = false;
  bool ltl_correct = false;
  std::optional<ErrorKind> error;
  std::string detail;
};

inline PipelineResult run_pipeline(const CorpusRecord& rec, const TemplateLibrary& lib,
                                   const GroundingLexicon& lex, const PropRegistry& reg,
                                   const PipelineOptions& opt = {}) {
  PipelineResult r;
  try {
    ContextualQuery cq;
    if (opt.use_gold_cq) {
      cq = make_cq(rec.gold_cq.descriptor, rec.gold_cq.params);
    } else {
      cq = extract_cq(rec.text, lex, {opt.pos_disambiguation, opt.pickup_as_noun});
    }
    if (!opt.pos_disambiguation) cq.hints.assign(cq.params.size(), std::nullopt);
    r.cq = cq;
    r.cq_correct = cq == rec.gold_cq;
    const TemplatedLtl* t = lib.find(cq.descriptor);
    if (!t) throw Error(ErrorKind::MissingTemplate, std::string(task_class_name(cq.descriptor)));
    Formula f = instantiate(*t, cq, reg, lex);
    r.ltl = format_ltl(f);
    r.ltl_correct = f == parse_ltl(rec.gold_ltl);
  } catch (const Error& e) {
    r.error = e.kind();
    r.detail = e.detail();
  }
  return r;
}

/// One template per requested class, learned from the first record whose
/// gold query grounds to pairwise-distinct referents.
inline TemplateLibrary train_templates(const std::vector<CorpusRecord>& records, const PropRegistry& reg,
                                       const GroundingLexicon& lex,
                                       const std::vector<TaskClass>& classes = {kAllTaskClasses.begin(),
                                                                                kAllTaskClasses.end()}) {
  TemplateLibrary lib;
  for (TaskClass c : classes) {
    bool learned = false;
    for (const auto& rec : records) {
      if (rec.task_class != c) continue;
      try {
        ContextualQuery cq = make_cq(rec.gold_cq.descriptor, rec.gold_cq.params);
        require_distinct(cq, ground_params(cq, lex));
        lib.put(learn_template(cq, parse_ltl(rec.gold_ltl), reg, lex));
        learned = true;
        break;
      } catch (const Error&) {
      }
    }
    if (!learned) throw Error(ErrorKind::NoValidExample, std::string(task_class_name(c)));
  }
  return lib;
}

struct ClassMetrics {
  std::size_t total = 0;
  std::size_t cq_correct = 0;
  std::size_t ltl_correct = 0;
  std::map<std::string, std::size_t> errors;

  double accuracy() const { return total ? static_cast<double>(ltl_correct) / total : 0.0; }
  double cq_accuracy() const { return total ? static_cast<double>(cq_correct) / total : 0.0; }

  void add(const PipelineResult& r) {
    ++total;
    cq_correct += r.cq_correct;
    ltl_correct += r.ltl_correct;
    if (r.error) ++errors[std::string(kind_name(*r.error))];
  }
};

struct Metrics {
  std::string split;
  std::map<TaskClass, ClassMetrics> per_class;
  ClassMetrics overall;
};

inline Metrics evaluate(const std::vector<CorpusRecord>& records, const TemplateLibrary& lib,
                        const GroundingLexicon& lex, const PropRegistry& reg,
                        const PipelineOptions& opt = {}) {
  Metrics m;
  std::set<std::string> splits;
  for (const auto& rec : records) {
    auto r = run_pipeline(rec, lib, lex, reg, opt);
    m.per_class[rec.task_class].add(r);
    m.overall.add(r);
    splits.insert(std::string(split_name(rec.split)));
  }
  m.split = splits.size() == 1 ? *splits.begin() : splits.empty() ? "" : "mixed";
  return m;
}

inline std::string metrics_csv(const Metrics& m) {
  std::string out = "split,task_class,total,cq_correct,ltl_correct,accuracy\n";
  auto row = [&](std::string_view name, const ClassMetrics& c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%zu,%zu,%zu,%.4f\n", m.split.c_str(),
                  std::string(name).c_str(), c.total, c.cq_correct, c.ltl_correct, c.accuracy());
    out += buf;
  };
  for (const auto& [c, cm] : m.per_class) row(task_class_name(c), cm);
  row("overall", m.overall);
  return out;
}

inline nlohmann::ordered_json metrics_histogram(const Metrics& m) {
  nlohmann::ordered_json j;
  j["split"] = m.split;
  j["overall"] = m.overall.errors;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [c, cm] : m.per_class) per[std::string(task_class_name(c))] = cm.errors;
  j["per_class"] = std::move(per);
  return j;
}

}  // namespace groundsmith
