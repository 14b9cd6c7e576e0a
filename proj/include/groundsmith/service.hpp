#pragma once

// Interactive sessions behind a transport-agnostic request handler. The HTTP
// binding lives in http.hpp.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "groundsmith/contextual_query.hpp"
#include "groundsmith/error.hpp"
#include "groundsmith/frontend.hpp"
#include "groundsmith/grounding.hpp"
#include "groundsmith/planner.hpp"
#include "groundsmith/templates.hpp"
#include "groundsmith/toy_world.hpp"

namespace groundsmith {

/// Grid, rooms and entity placements as JSON.
inline nlohmann::json render_state(const World& w, const ToyState& s) {
  using nlohmann::json;
  const auto& cfg = w.config();
  auto where = [&](const EntityLocation& l) -> json {
    switch (l.kind) {
      case EntityLocation::Kind::Cell: return {{"kind", "cell"}, {"cell", l.value}};
      case EntityLocation::Kind::Held: return {{"kind", "held"}};
      case EntityLocation::Kind::InContainer:
        return {{"kind", "in_container"}, {"container", cfg.containers[l.value].id}};
    }
    return nullptr;
  };
  json holding = nullptr;
  json toys = json::array(), containers = json::array(), rooms = json::array(), cells = json::array();
  for (std::size_t i = 0; i < cfg.toys.size(); ++i) {
    const auto& t = cfg.toys[i];
    if (s.toys[i].kind == EntityLocation::Kind::Held) holding = t.id;
    toys.push_back({{"id", t.id}, {"label", t.label}, {"shape", t.shape}, {"color", t.color},
                    {"cell", w.toy_cell(s, static_cast<int>(i))}, {"location", where(s.toys[i])}});
  }
  for (std::size_t k = 0; k < cfg.containers.size(); ++k) {
    const auto& c = cfg.containers[k];
    if (s.containers[k].kind == EntityLocation::Kind::Held) holding = c.id;
    containers.push_back({{"id", c.id}, {"label", c.label}, {"kind", c.kind},
                          {"cell", w.container_cell(s, static_cast<int>(k))},
                          {"location", where(s.containers[k])}});
  }
  for (const auto& r : cfg.rooms) rooms.push_back({{"id", r.id}, {"label", r.label}, {"cells", r.cells}});
  for (int c = 0; c < w.cell_count(); ++c) {
    json in_rooms = json::array();
    for (std::size_t r = 0; r < cfg.rooms.size(); ++r)
      if (w.room_contains(static_cast<int>(r), c)) in_rooms.push_back(cfg.rooms[r].id);
    cells.push_back({{"index", c}, {"x", c % cfg.grid_width}, {"y", c / cfg.grid_width}, {"rooms", in_rooms}});
  }
  return {{"grid", {{"width", cfg.grid_width}, {"height", cfg.grid_height}}},
          {"cells", cells},
          {"rooms", rooms},
          {"agent", {{"cell", s.agent_cell}, {"holding", holding}}},
          {"toys", toys},
          {"containers", containers},
          {"digest", w.digest(s)}};
}

/// A world ready for the pipeline: dynamics, registry and lexicon.
struct GroundedWorld {
  std::shared_ptr<const World> world;
  std::shared_ptr<const PropRegistry> registry;
  std::shared_ptr<const GroundingLexicon> lexicon;

  explicit GroundedWorld(const WorldConfig& cfg)
      : world(std::make_shared<const World>(cfg)),
        registry(std::make_shared<const PropRegistry>(world)),
        lexicon(std::make_shared<const GroundingLexicon>(lexicon_from_world(*world))) {}
};

struct ServiceConfig {
  std::map<std::string, WorldConfig> worlds;
  TemplateLibrary library;
  std::chrono::seconds idle_timeout{30 * 60};
  PlanOptions plan;
};

class Service {
 public:
  using Clock = std::chrono::steady_clock;

  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  explicit Service(ServiceConfig cfg, std::function<Clock::time_point()> now = Clock::now)
      : library_(std::move(cfg.library)), idle_(cfg.idle_timeout), plan_opt_(cfg.plan), now_(std::move(now)) {
    for (const auto& [id, wc] : cfg.worlds) worlds_.emplace(id, GroundedWorld(wc));
    std::random_device rd;
    rng_.seed((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  }

  Response handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      evict_idle();
      auto parts = split_path(path);
      if (method == "GET" && parts.size() == 1 && parts[0] == "worlds") return list_worlds();
      if (method == "POST" && parts.size() == 1 && parts[0] == "sessions") return create(parse_body(body));
      if (parts.size() == 3 && parts[0] == "sessions") {
        const std::string& verb = parts[2];
        if (method == "GET" && verb == "state") return with_session(parts[1], [&](Session& s) { return state_of(s); });
        if (method == "POST" && verb == "command") {
          auto j = parse_body(body);
          if (!j.contains("text") || !j["text"].is_string())
            throw Error(ErrorKind::MalformedBody, "expected {\"text\": string}");
          std::string text = j["text"].get<std::string>();
          return with_session(parts[1], [&](Session& s) { return command(s, text); });
        }
        if (method == "POST" && verb == "step") return with_session(parts[1], [&](Session& s) { return step(s); });
        if (method == "POST" && verb == "reset") return with_session(parts[1], [&](Session& s) { return reset(s); });
      }
      return {404, {{"kind", "NotFound"}, {"detail", std::string(method) + " " + std::string(path)}}};
    } catch (const Error& e) {
      return {status_for(e.kind()), error_json(e)};
    }
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mu_);
    return sessions_.size();
  }

  /// Drops sessions idle for longer than the timeout.
  void evict_idle() {
    const auto now = now_();
    std::unique_lock lock(sessions_mu_);
    std::erase_if(sessions_, [&](const auto& kv) {
      std::lock_guard g(kv.second->mu);
      return now - kv.second->last_used > idle_;
    });
  }

  static int status_for(ErrorKind k) {
    switch (k) {
      case ErrorKind::UnknownSession: return 404;
      case ErrorKind::PlanExhausted: return 409;
      default: return 400;
    }
  }

  static nlohmann::json error_json(const Error& e) {
    return {{"kind", kind_name(e.kind())}, {"detail", e.detail()}};
  }

 private:
  struct PendingPlan {
    std::vector<Action> actions;
    std::vector<std::string> specs;  // spec after each prefix, initial first
    std::size_t cursor = 0;
  };

  struct History {
    std::string text;
    std::optional<ContextualQuery> cq;
    std::string ltl;
    std::string outcome;
  };

  struct Session {
    std::string id;
    std::string world_id;
    const GroundedWorld* world = nullptr;
    bool pos_disambiguation = true;
    ToyState current;
    std::optional<PendingPlan> plan;
    std::vector<History> history;
    Clock::time_point last_used;
    std::mutex mu;
  };

  static std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : path) {
      if (c == '?') break;
      if (c == '/') {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
  }

  static nlohmann::json parse_body(std::string_view body) {
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::MalformedBody, "body is not a JSON object");
    return j;
  }

  template <typename Fn>
  Response with_session(const std::string& id, Fn&& fn) {
    std::shared_ptr<Session> s;
    {
      std::shared_lock lock(sessions_mu_);
      auto it = sessions_.find(id);
      if (it == sessions_.end()) throw Error(ErrorKind::UnknownSession, id);
      s = it->second;
    }
    std::lock_guard g(s->mu);
    s->last_used = now_();
    return fn(*s);
  }

  Response list_worlds() const {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& [id, _] : worlds_) ids.push_back(id);
    return {200, {{"worlds", ids}}};
  }

  Response create(const nlohmann::json& j) {
    if (!j.contains("world_id") || !j["world_id"].is_string())
      throw Error(ErrorKind::MalformedBody, "expected {\"world_id\": string}");
    bool pos = true;
    if (j.contains("pos_disambiguation")) {
      if (!j["pos_disambiguation"].is_boolean())
        throw Error(ErrorKind::MalformedBody, "pos_disambiguation must be boolean");
      pos = j["pos_disambiguation"].get<bool>();
    }
    auto wid = j["world_id"].get<std::string>();
    auto w = worlds_.find(wid);
    if (w == worlds_.end()) throw Error(ErrorKind::InvalidConfig, "unknown world '" + wid + "'");
    auto s = std::make_shared<Session>();
    s->world_id = wid;
    s->world = &w->second;
    s->pos_disambiguation = pos;
    s->current = w->second.world->initial_state();
    s->last_used = now_();
    std::unique_lock lock(sessions_mu_);
    do {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
      s->id = buf;
    } while (sessions_.count(s->id));
    sessions_.emplace(s->id, s);
    return {200, {{"session_id", s->id}, {"world_id", wid}, {"state", render_state(*s->world->world, s->current)}}};
  }

  Response state_of(Session& s) const {
    nlohmann::json body{{"session_id", s.id}, {"state", render_state(*s.world->world, s.current)}};
    if (s.plan) {
      body["remaining_spec"] = s.plan->specs[s.plan->cursor];
      body["remaining_steps"] = s.plan->actions.size() - s.plan->cursor;
    }
    return {200, body};
  }

  Response command(Session& s, const std::string& text) const {
    const GroundedWorld& gw = *s.world;
    nlohmann::json body{{"cq", nullptr}, {"ltl", nullptr}, {"plan", nlohmann::json::array()}, {"accepted", false}};
    History h{text, std::nullopt, "", ""};
    s.plan.reset();
    try {
      ContextualQuery cq = extract_cq(text, *gw.lexicon, {s.pos_disambiguation, false});
      h.cq = cq;
      body["cq"] = cq;
      Formula f = instantiate(library_.at(cq.descriptor), cq, *gw.registry, *gw.lexicon);
      h.ltl = format_ltl(f);
      body["ltl"] = h.ltl;
      PlanResult r = plan(*gw.world, s.current, f, *gw.registry, plan_opt_);
      PendingPlan p;
      for (const auto& a : r.actions) {
        p.actions.push_back(a);
        body["plan"].push_back(to_string(a));
      }
      for (const auto& st : r.steps) p.specs.push_back(format_ltl(st.spec));
      s.plan = std::move(p);
      body["accepted"] = r.accepted;
      h.outcome = "planned";
    } catch (const Error& e) {
      body["error"] = error_json(e);
      h.outcome = std::string(kind_name(e.kind()));
    }
    s.history.push_back(std::move(h));
    return {200, body};
  }

  Response step(Session& s) const {
    if (!s.plan || s.plan->cursor >= s.plan->actions.size())
      throw Error(ErrorKind::PlanExhausted, s.plan ? "plan already executed" : "no pending plan");
    const Action a = s.plan->actions[s.plan->cursor++];
    s.current = transition(*s.world->world, s.current, a);
    const std::size_t left = s.plan->actions.size() - s.plan->cursor;
    return {200,
            {{"action", to_string(a)},
             {"state", render_state(*s.world->world, s.current)},
             {"remaining_spec", s.plan->specs[s.plan->cursor]},
             {"remaining_steps", left},
             {"done", left == 0}}};
  }

  Response reset(Session& s) const {
    s.current = s.world->world->initial_state();
    s.plan.reset();
    s.history.clear();
    return {200, {{"session_id", s.id}, {"state", render_state(*s.world->world, s.current)}}};
  }

  TemplateLibrary library_;
  std::map<std::string, GroundedWorld> worlds_;
  std::chrono::seconds idle_;
  PlanOptions plan_opt_;
  std::function<Clock::time_point()> now_;

  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

}  // namespace groundsmith
