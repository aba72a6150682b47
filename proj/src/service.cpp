/*
 * Copyright 2026 The Gamesmith Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gamesmith/service.hpp"

#include <sstream>
#include <vector>

#include "gamesmith/fixtures.hpp"
#include "gamesmith/gdl.hpp"

namespace gamesmith {

namespace {

HttpResponse json_response(int status, const Json& body)
{
    return {status, "application/json", body.dump()};
}

HttpResponse error_response(int status, const std::string& kind, const std::string& message)
{
    return json_response(status, Json{{"error", kind}, {"message", message}});
}

HttpResponse error_response(int status, const Error& e, const char* source = nullptr)
{
    Json body = to_json(e);
    if (source) body["source"] = source;
    return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path)
{
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(path);
    while (std::getline(is, part, '/'))
        if (!part.empty()) parts.push_back(part);
    return parts;
}

const char* kPlaceholderPage = R"html(<!doctype html>
<html>
<head><meta charset="utf-8"><title>gamesmith arena</title></head>
<body>
<h1>gamesmith arena</h1>
<p>The browser client is not installed. Start the server with <code>--ui-dir</code> pointing at a built client,
or drive the session API under <code>/api/sessions</code> directly.</p>
</body>
</html>
)html";

Json edge_json(const GameStructure& game, EdgeIndex e)
{
    const Edge& edge = game.edge(e);
    return Json{{"from", game.state(edge.src).id}, {"to", game.state(edge.dst).id}, {"label", edge.label}};
}

} // namespace

Json session_view(const Session& s)
{
    const GameStructure& game = s.game();
    const ObjectiveSpec& spec = game.objectives();

    Json credits = Json::array();
    for (std::size_t i = 0; i < spec.energy_dims.size(); ++i)
        credits.push_back(Json{{"dim", spec.energy_dims[i] + 1},
                               {"name", game.dimension_name(spec.energy_dims[i])},
                               {"value", s.credits()[i]}});
    Json means = Json::array();
    bool below = true;
    for (const auto& c : spec.mean_payoff) {
        const auto mean = s.running_mean(c.dim);
        if (mean && c.threshold < *mean) below = false;
        means.push_back(Json{{"dim", c.dim + 1},
                             {"name", game.dimension_name(c.dim)},
                             {"value", mean ? to_json(*mean) : Json(nullptr)},
                             {"threshold", to_json(c.threshold)}});
    }
    Json targets = Json::array();
    for (StateIndex t : spec.buchi_targets) targets.push_back(game.state(t).id);
    Json trace = Json::array();
    for (const auto& t : s.trace()) {
        Json step = edge_json(game, t.edge);
        step["index"] = t.index;
        step["mover"] = static_cast<int>(t.mover);
        trace.push_back(step);
    }
    const State& here = game.state(s.state());
    return Json{{"game", game.name()},
                {"state", here.id},
                {"owner_to_move", static_cast<int>(here.owner)},
                {"awaiting_input", s.awaiting_input()},
                {"memory", s.has_controller() ? Json(s.memory()) : Json(nullptr)},
                {"credits", credits},
                {"energy_violated", s.energy_violated()},
                {"running_mean", means},
                {"elapsed_edges", s.edge_count()},
                {"buchi", Json{{"visits", s.buchi_visits()}, {"targets", targets}}},
                {"legal_destinations", s.legal_destinations()},
                {"last_controller_move",
                 s.last_controller_edge() ? edge_json(game, *s.last_controller_edge()) : Json(nullptr)},
                {"trace", trace},
                {"paused", s.paused()},
                {"can_undo", s.undo_depth() > 0},
                {"status",
                 Json{{"energy_ok", !s.energy_violated()},
                      {"mean_within_threshold", spec.mean_payoff.empty() ? Json(nullptr) : Json(below)},
                      {"buchi_visited", spec.buchi_targets.empty() ? Json(nullptr) : Json(s.buchi_visits() > 0)}}}};
}

ArenaService::ArenaService(ServiceOptions options) : options_(std::move(options)) {}

std::size_t ArenaService::session_count() const
{
    std::lock_guard lock(store_mutex_);
    return sessions_.size();
}

std::size_t ArenaService::evict_idle()
{
    const auto now = options_.clock();
    std::lock_guard lock(store_mutex_);
    std::size_t evicted = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
        if (entry_lock.owns_lock() && now - it->second->last_used > options_.idle_timeout) {
            entry_lock.unlock();
            it = sessions_.erase(it);
            ++evicted;
        } else {
            ++it;
        }
    }
    return evicted;
}

Json ArenaService::view(const std::string& id, const Entry& entry, const Session& session, bool hypothetical) const
{
    Json v{{"session_id", id}};
    const Json core = session_view(session);
    for (auto it = core.begin(); it != core.end(); ++it) v[it.key()] = it.value();
    v["synthesis"] = entry.banner;
    v["verified"] = entry.verified;
    v["hypothetical"] = hypothetical;
    return v;
}

HttpResponse ArenaService::handle(const std::string& method, const std::string& path,
                                  const std::map<std::string, std::string>& query, const std::string& body)
{
    evict_idle();
    const auto parts = split_path(path);

    if (parts.empty()) {
        if (method != "GET") return error_response(405, "MethodNotAllowed", method + " " + path);
        return {200, "text/html; charset=utf-8", kPlaceholderPage};
    }
    if (parts[0] != "api") return error_response(404, "NotFound", path);

    if (parts.size() == 4 && parts[1] == "games" && parts[2] == "builtin") {
        if (method != "GET") return error_response(405, "MethodNotAllowed", method + " " + path);
        if (auto text = builtin_game(parts[3])) return {200, "text/plain; charset=utf-8", std::string(*text)};
        return error_response(404, "NotFound", "no built-in game " + parts[3]);
    }
    if (parts.size() == 4 && parts[1] == "strategies" && parts[2] == "builtin") {
        if (method != "GET") return error_response(405, "MethodNotAllowed", method + " " + path);
        if (auto text = builtin_strategy(parts[3])) return {200, "text/plain; charset=utf-8", std::string(*text)};
        return error_response(404, "NotFound", "no built-in strategy " + parts[3]);
    }
    if (parts.size() < 2 || parts[1] != "sessions") return error_response(404, "NotFound", path);

    if (parts.size() == 2) {
        if (method != "POST") return error_response(405, "MethodNotAllowed", method + " " + path);
        return create(body);
    }
    const std::string& id = parts[2];
    if (parts.size() == 3) {
        if (method == "GET")
            return with_session(id, [&](Entry& e) { return json_response(200, view(id, e, e.session, false)); });
        if (method == "DELETE") {
            std::lock_guard lock(store_mutex_);
            if (!sessions_.erase(id)) return error_response(404, "UnknownSession", "no session " + id);
            return {204, "application/json", ""};
        }
        return error_response(405, "MethodNotAllowed", method + " " + path);
    }
    if (parts.size() != 4) return error_response(404, "NotFound", path);
    const std::string& action = parts[3];

    auto guarded = [&](Entry& e, const std::function<void(Session&)>& f, bool hypothetical) {
        try {
            if (hypothetical) {
                Session copy = e.session;
                f(copy);
                return json_response(200, view(id, e, copy, true));
            }
            f(e.session);
            return json_response(200, view(id, e, e.session, false));
        } catch (const SessionError& err) {
            return error_response(400, err);
        }
    };

    if (action == "move") {
        if (method != "POST") return error_response(405, "MethodNotAllowed", method + " " + path);
        std::string to;
        try {
            const Json req = Json::parse(body);
            to = req.at("to").get<std::string>();
        } catch (const std::exception&) {
            return error_response(400, "BadRequest", "expected a JSON body {\"to\": \"<state>\"}");
        }
        return with_session(id, [&](Entry& e) { return guarded(e, [&](Session& s) { s.step(to); }, false); });
    }
    if (action == "advance" || action == "undo") {
        if (method != "POST") return error_response(405, "MethodNotAllowed", method + " " + path);
        return with_session(id, [&](Entry& e) {
            return guarded(
                e,
                [&](Session& s) {
                    if (action == "undo")
                        s.undo();
                    else
                        s.advance();
                },
                false);
        });
    }
    if (action == "whatif") {
        if (method != "GET") return error_response(405, "MethodNotAllowed", method + " " + path);
        auto it = query.find("to");
        if (it == query.end()) return error_response(400, "BadRequest", "missing query parameter 'to'");
        const std::string to = it->second;
        return with_session(id, [&](Entry& e) { return guarded(e, [&](Session& s) { s.step(to); }, true); });
    }
    return error_response(404, "NotFound", path);
}

HttpResponse ArenaService::with_session(const std::string& id, const std::function<HttpResponse(Entry&)>& action)
{
    std::shared_ptr<Entry> entry;
    {
        std::lock_guard lock(store_mutex_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) return error_response(404, "UnknownSession", "no session " + id);
        entry = it->second;
    }
    std::lock_guard lock(entry->mutex);
    entry->last_used = options_.clock();
    return action(*entry);
}

HttpResponse ArenaService::create(const std::string& body)
{
    Json req = Json::object();
    if (!body.empty()) {
        try {
            req = Json::parse(body);
        } catch (const Json::parse_error& e) {
            return error_response(400, "BadRequest", std::string("invalid JSON: ") + e.what());
        }
    }
    if (!req.is_object()) return error_response(400, "BadRequest", "expected a JSON object");

    std::optional<std::string> game_text, strategy_text;
    std::optional<CreditVector> credit;
    bool run_synthesis = false;
    bool auto_advance = true;
    try {
        if (req.contains("game_text")) {
            game_text = req["game_text"].get<std::string>();
            if (req.contains("strategy_text") && !req["strategy_text"].is_null())
                strategy_text = req["strategy_text"].get<std::string>();
        } else {
            game_text = options_.game_text;
            strategy_text = options_.strategy_text;
            if (req.contains("strategy_text") && !req["strategy_text"].is_null())
                strategy_text = req["strategy_text"].get<std::string>();
        }
        if (req.contains("credit") && !req["credit"].is_null())
            credit = CreditVector(req["credit"].get<std::vector<std::int64_t>>());
        if (req.contains("synthesize")) run_synthesis = req["synthesize"].get<bool>();
        if (req.contains("auto_advance")) auto_advance = req["auto_advance"].get<bool>();
    } catch (const Json::exception& e) {
        return error_response(400, "BadRequest", std::string("malformed request: ") + e.what());
    }
    if (!game_text) return error_response(400, "BadRequest", "no game_text given and no game is served");

    std::shared_ptr<const GameStructure> game;
    std::shared_ptr<const StrategyDoc> strategy;
    try {
        game = std::make_shared<const GameStructure>(gdl::parse_game(*game_text));
    } catch (const Error& e) {
        return error_response(422, e, "game");
    }
    if (strategy_text) {
        try {
            strategy = std::make_shared<const StrategyDoc>(gdl::parse_strategy(*strategy_text));
        } catch (const Error& e) {
            return error_response(422, e, "strategy");
        }
    }

    Json banner = nullptr;
    if (run_synthesis) {
        SynthesisResult r;
        try {
            r = synthesize(*game, options_.synthesis);
        } catch (const InternalError& e) {
            return error_response(500, e);
        } catch (const Error& e) {
            return error_response(422, e, "synthesis");
        }
        banner = Json{{"engine", to_string(r.engine_used)},
                      {"status", to_string(r.status)},
                      {"credits", to_json(r.credits)},
                      {"chosen_credit", r.chosen_credit ? to_json(*r.chosen_credit) : Json(nullptr)}};
        if (!strategy) {
            if (r.status != SynthesisStatus::Winning || !r.strategy)
                return json_response(409, Json{{"error", "SynthesisNotWinning"},
                                               {"message", std::string("synthesis returned ") + to_string(r.status)},
                                               {"synthesis", banner}});
            strategy = std::make_shared<const StrategyDoc>(std::move(*r.strategy));
            if (!credit) credit = r.chosen_credit;
        }
    }
    if (!credit) credit = CreditVector(game->objectives().energy_dims.size());

    Json verified = nullptr;
    if (strategy) {
        try {
            verified = Json{{"pass", verify_all(*game, *strategy, *credit).pass}};
        } catch (const ProductError& e) {
            verified = Json{{"pass", false}, {"error", to_json(e)}};
        } catch (const Error&) {
            verified = Json{{"pass", false}};
        }
    }

    SessionOptions so;
    so.auto_advance = auto_advance;
    std::optional<Session> session;
    try {
        session.emplace(game, strategy, *credit, so);
    } catch (const SessionError& e) {
        return error_response(400, e);
    } catch (const Error& e) {
        return error_response(422, e, "strategy");
    }

    auto entry = std::make_shared<Entry>(std::move(*session), std::move(banner), std::move(verified));
    entry->last_used = options_.clock();
    std::string id;
    {
        std::lock_guard lock(store_mutex_);
        id = "s" + std::to_string(next_id_++);
        sessions_[id] = entry;
    }
    std::lock_guard lock(entry->mutex);
    return json_response(201, Json{{"session_id", id}, {"view", view(id, *entry, entry->session, false)}});
}

} // namespace gamesmith
