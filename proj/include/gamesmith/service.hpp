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

#pragma once

// REST session API for playing the environment against a controller.
//
//   POST   /api/sessions                 {game_text?, strategy_text?, synthesize?, credit?, auto_advance?}
//   GET    /api/sessions/{id}
//   POST   /api/sessions/{id}/move       {to}
//   POST   /api/sessions/{id}/advance
//   POST   /api/sessions/{id}/undo
//   GET    /api/sessions/{id}/whatif?to=X
//   DELETE /api/sessions/{id}
//   GET    /api/games/builtin/{name}
//   GET    /api/strategies/builtin/{name}
//
// Without game_text the served game (and its strategy) is used.

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "gamesmith/report.hpp"
#include "gamesmith/simulate.hpp"
#include "gamesmith/synth.hpp"

namespace httplib {
class Server;
}

namespace gamesmith {

struct HttpResponse
{
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

struct ServiceOptions
{
    std::optional<std::string> game_text;
    std::optional<std::string> strategy_text;
    /// Directory with the browser client; a placeholder page otherwise.
    std::optional<std::string> ui_dir;
    std::chrono::seconds idle_timeout{3600};
    SynthesisConfig synthesis;
    std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

class ArenaService
{
public:
    explicit ArenaService(ServiceOptions options = {});

    /// Thread-safe. `query` holds decoded query parameters.
    HttpResponse handle(const std::string& method, const std::string& path,
                        const std::map<std::string, std::string>& query, const std::string& body);

    std::size_t session_count() const;
    /// Drops sessions idle for longer than the timeout; returns how many.
    std::size_t evict_idle();

    const ServiceOptions& options() const { return options_; }

private:
    struct Entry
    {
        std::mutex mutex;
        Session session;
        Json banner;
        Json verified;
        std::chrono::steady_clock::time_point last_used;

        Entry(Session s, Json b, Json v) : session(std::move(s)), banner(std::move(b)), verified(std::move(v)) {}
    };

    HttpResponse create(const std::string& body);
    HttpResponse with_session(const std::string& id, const std::function<HttpResponse(Entry&)>& action);
    Json view(const std::string& id, const Entry& entry, const Session& session, bool hypothetical) const;

    ServiceOptions options_;
    mutable std::mutex store_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::size_t next_id_ = 1;
};

/// Session view as served by the API.
Json session_view(const Session& session);

/// HTTP front end of an ArenaService. Static files come from
/// options().ui_dir when set.
class HttpServer
{
public:
    explicit HttpServer(ArenaService& service);
    ~HttpServer();

    /// Binds the socket; port 0 picks a free one. Returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called from another thread.
    void run();
    void stop();

private:
    std::unique_ptr<httplib::Server> server_;
};

} // namespace gamesmith
