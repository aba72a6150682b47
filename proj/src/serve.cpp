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

#include <httplib.h>

#include "gamesmith/service.hpp"

namespace gamesmith {

HttpServer::HttpServer(ArenaService& service) : server_(std::make_unique<httplib::Server>())
{
    if (service.options().ui_dir && !server_->set_mount_point("/", *service.options().ui_dir))
        throw Error("cannot serve static files from " + *service.options().ui_dir);

    auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [key, value] : req.params) query.emplace(key, value);
        const HttpResponse r = service.handle(req.method, req.path, query, req.body);
        res.status = r.status;
        if (r.status != 204) res.set_content(r.body, r.content_type);
    };
    server_->Get(".*", forward);
    server_->Post(".*", forward);
    server_->Delete(".*", forward);
    server_->Put(".*", forward);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port)
{
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot listen on " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::run()
{
    server_->listen_after_bind();
}

void HttpServer::stop()
{
    server_->stop();
}

} // namespace gamesmith
