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

#include "gamesmith/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "gamesmith/fixtures.hpp"
#include "gamesmith/gdl.hpp"
#include "gamesmith/report.hpp"
#include "gamesmith/service.hpp"
#include "gamesmith/simulate.hpp"
#include "gamesmith/synth.hpp"
#include "gamesmith/verify.hpp"

namespace gamesmith::cli {

namespace {

/// Bad invocation detected after argument parsing.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Error tied to an input file, reported as "<file>:<line>:<col>: ...".
struct InputError
{
    std::string file;
    std::optional<SourceSpan> span;
    std::string detail;
    std::vector<std::string> path;
    bool internal = false;

    InputError(std::string f, const Error& e) : file(std::move(f)), span(e.span()), detail(e.detail())
    {
        if (auto p = dynamic_cast<const ProductError*>(&e)) path = p->path();
        internal = dynamic_cast<const InternalError*>(&e) != nullptr;
    }
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, Error("cannot read file"));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Loaded
{
    std::string path;
    std::string text;
};

template <typename F>
auto parse_input(const Loaded& in, F&& parse)
{
    try {
        return parse(in.text);
    } catch (const Error& e) {
        throw InputError(in.path, e);
    }
}

CreditVector parse_credit(const std::string& text, std::size_t dims)
{
    if (text.empty()) return CreditVector(dims);
    std::vector<std::int64_t> values;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size() || v < 0)
            throw UsageError("--credit expects non-negative integers separated by commas, got '" + text + "'");
        values.push_back(v);
    }
    if (values.size() != dims)
        throw UsageError("--credit has " + std::to_string(values.size()) + " components, the game has " +
                         std::to_string(dims) + " energy dimensions");
    return CreditVector(std::move(values));
}

std::int64_t default_max_cap()
{
    const char* env = std::getenv("GAMESMITH_MAX_CAP");
    if (!env || !*env) return kDefaultMaxCap;
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (*end != '\0' || v < 1) throw UsageError(std::string("GAMESMITH_MAX_CAP must be a positive integer, got '") + env + "'");
    return v;
}

void print_input_error(std::ostream& err, const InputError& ie)
{
    err << ie.file << ":";
    if (ie.span) err << to_string(*ie.span) << ":";
    err << " error: " << ie.detail << "\n";
    if (!ie.path.empty()) {
        err << "  path:";
        for (std::size_t i = 0; i < ie.path.size(); ++i) err << (i ? " -> " : " ") << ie.path[i];
        err << "\n";
    }
}

struct Options
{
    std::string game_path;
    std::string strategy_path;
    std::string format = "text";
    // synth
    std::string output;
    std::string engine = "auto";
    std::optional<std::int64_t> max_cap;
    std::optional<std::int64_t> initial_cap;
    std::optional<std::int64_t> ceiling;
    std::size_t max_nodes = kDefaultMaxArenaNodes;
    bool no_refine = false;
    bool timings = false;
    // verify / simulate
    std::string credit;
    std::string adversary = "random";
    std::vector<std::string> script;
    std::uint64_t seed = 0;
    std::size_t steps = 20;
    // serve
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string ui_dir;
};

SynthesisConfig synthesis_config(const Options& o)
{
    SynthesisConfig c;
    c.engine = *parse_engine(o.engine);
    c.max_cap = o.max_cap.value_or(default_max_cap());
    c.initial_cap = o.initial_cap;
    c.ceiling = o.ceiling;
    c.max_arena_nodes = o.max_nodes;
    c.refine = !o.no_refine;
    return c;
}

int exit_for(SynthesisStatus s)
{
    switch (s) {
    case SynthesisStatus::Winning: return kPass;
    case SynthesisStatus::Losing: return kFail;
    case SynthesisStatus::Unknown: return kUnknown;
    }
    return kInternalError;
}

void emit(std::ostream& out, const Options& o, const Json& json, const std::string& text)
{
    if (o.format == "json")
        out << json.dump(2) << "\n";
    else
        out << text;
}

int cmd_check(const Options& o, std::ostream& out)
{
    const Loaded in{o.game_path, read_file(o.game_path)};
    const GameStructure game = parse_input(in, gdl::parse_game);
    emit(out, o, check_json(game), check_text(game));
    return kPass;
}

int cmd_synth(const Options& o, std::ostream& out)
{
    const Loaded in{o.game_path, read_file(o.game_path)};
    const GameStructure game = parse_input(in, gdl::parse_game);
    const SynthesisConfig config = synthesis_config(o);
    if (config.engine == Engine::Antichain && game.objectives().has_recurrence())
        throw UsageError("--engine antichain does not handle buchi or parity objectives");
    const SynthesisResult r = synthesize(game, config);
    if (!o.output.empty() && r.strategy) {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw UsageError("cannot write " + o.output);
        f << gdl::serialize_strategy(*r.strategy);
    }
    Json json = synthesis_json(game, r, o.timings);
    std::string text = synthesis_text(game, r, o.timings);
    if (!o.output.empty() && r.strategy) {
        json["output"] = o.output;
        text += "written: " + o.output + "\n";
    }
    emit(out, o, json, text);
    return exit_for(r.status);
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const Loaded gin{o.game_path, read_file(o.game_path)};
    const Loaded sin{o.strategy_path, read_file(o.strategy_path)};
    const GameStructure game = parse_input(gin, gdl::parse_game);
    const StrategyDoc strategy = parse_input(sin, gdl::parse_strategy);
    const CreditVector credit = parse_credit(o.credit, game.objectives().energy_dims.size());
    const VerificationReport r = parse_input(sin, [&](const std::string&) { return verify_all(game, strategy, credit); });
    emit(out, o, verification_json(game, r), verification_text(game, r));
    return r.pass ? kPass : kFail;
}

int cmd_simulate(const Options& o, std::ostream& out)
{
    const Loaded gin{o.game_path, read_file(o.game_path)};
    const Loaded sin{o.strategy_path, read_file(o.strategy_path)};
    auto game = std::make_shared<const GameStructure>(parse_input(gin, gdl::parse_game));
    auto strategy = std::make_shared<const StrategyDoc>(parse_input(sin, gdl::parse_strategy));
    const CreditVector credit = parse_credit(o.credit, game->objectives().energy_dims.size());

    std::unique_ptr<Adversary> adversary;
    if (o.adversary == "random")
        adversary = std::make_unique<RandomAdversary>(o.seed);
    else if (o.adversary == "script")
        adversary = std::make_unique<ScriptAdversary>(o.script);
    else
        adversary = parse_input(sin, [&](const std::string&) {
            return std::make_unique<SpoilerAdversary>(*game, *strategy, credit, o.seed);
        });

    SessionOptions so;
    so.auto_advance = false;
    so.history_depth = 0;
    so.trace_limit = 1;
    std::optional<Session> session;
    parse_input(sin, [&](const std::string&) { return session.emplace(game, strategy, credit, so), 0; });

    const ObjectiveSpec& spec = game->objectives();
    Json steps = Json::array();
    std::ostringstream text;
    text << "simulate " << strategy->name << " on " << game->name() << ", adversary " << o.adversary;
    if (o.adversary != "script") text << " seed " << o.seed;
    text << ", " << o.steps << " steps\n";
    for (std::size_t i = 0; i < o.steps; ++i) {
        if (session->to_move() == Player::Environment)
            session->step_to(adversary->choose(*session));
        else
            parse_input(sin, [&](const std::string&) { return session->controller_step(), 0; });
        const TraceEntry& t = session->trace().back();
        const Edge& e = game->edge(t.edge);
        const CreditVector credits{std::vector<std::int64_t>(session->credits())};
        text << t.index + 1 << " " << (t.mover == Player::System ? "ctl" : "env") << " " << game->state(t.src).id
             << " -> " << game->state(t.dst).id;
        if (!e.label.empty()) text << " \"" << e.label << "\"";
        text << " credits " << to_string(credits) << "\n";
        steps.push_back(Json{{"index", t.index},
                             {"mover", static_cast<int>(t.mover)},
                             {"from", game->state(t.src).id},
                             {"to", game->state(t.dst).id},
                             {"label", e.label},
                             {"memory", session->memory()},
                             {"credits", to_json(credits)}});
    }
    Json means = Json::array();
    text << "summary: " << session->edge_count() << " edges, credits "
         << to_string(CreditVector(std::vector<std::int64_t>(session->credits())));
    text << (session->energy_violated() ? ", energy VIOLATED" : ", energy ok");
    for (const auto& c : spec.mean_payoff) {
        const auto mean = session->running_mean(c.dim);
        means.push_back(Json{{"dim", game->dimension_name(c.dim)}, {"value", mean ? to_json(*mean) : Json(nullptr)}});
        text << ", mean " << game->dimension_name(c.dim) << " " << (mean ? to_string(*mean) : "-");
    }
    if (!spec.buchi_targets.empty()) text << ", buchi visits " << session->buchi_visits();
    text << "\n";
    Json json{{"kind", "simulation"},
              {"game", game->name()},
              {"strategy", strategy->name},
              {"adversary", o.adversary},
              {"seed", o.seed},
              {"steps", steps},
              {"summary",
               Json{{"edges", session->edge_count()},
                    {"credits", to_json(CreditVector(std::vector<std::int64_t>(session->credits())))},
                    {"energy_violated", session->energy_violated()},
                    {"running_mean", means},
                    {"buchi_visits", session->buchi_visits()}}}};
    emit(out, o, json, text.str());
    return session->energy_violated() ? kFail : kPass;
}

int cmd_serve(const Options& o, std::ostream& out)
{
    ServiceOptions so;
    if (o.game_path.empty()) {
        so.game_text = std::string(*builtin_game("lawnmower"));
        so.strategy_text = std::string(*builtin_strategy("lawnmower_sample"));
    } else {
        const Loaded gin{o.game_path, read_file(o.game_path)};
        parse_input(gin, gdl::parse_game);
        so.game_text = gin.text;
        if (!o.strategy_path.empty()) {
            const Loaded sin{o.strategy_path, read_file(o.strategy_path)};
            parse_input(sin, gdl::parse_strategy);
            so.strategy_text = sin.text;
        }
    }
    if (!o.ui_dir.empty()) so.ui_dir = o.ui_dir;
    so.synthesis = synthesis_config(o);
    ArenaService service(std::move(so));
    HttpServer server(service);
    const int port = server.bind(o.host, o.port);
    out << "serving on http://" << o.host << ":" << port << "/\n" << std::flush;
    server.run();
    return kPass;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Synthesis and verification of controllers for multi-weighted two-player games", "gamesmith"};
    app.require_subcommand(1);
    Options o;

    auto formats = CLI::IsMember({"text", "json"});
    auto* check = app.add_subcommand("check", "Parse and validate a game");
    check->add_option("game", o.game_path, "Game file")->required();
    check->add_option("--format", o.format, "text or json")->check(formats);

    auto* synth = app.add_subcommand("synth", "Synthesize a winning controller");
    synth->add_option("game", o.game_path, "Game file")->required();
    synth->add_option("-o,--output", o.output, "Write the strategy to this file");
    synth->add_option("--engine", o.engine, "capped, antichain or auto")
        ->check(CLI::IsMember({"auto", "capped", "antichain"}));
    synth->add_option("--max-cap", o.max_cap, "Largest credit cap")->check(CLI::PositiveNumber);
    synth->add_option("--initial-cap", o.initial_cap, "First credit cap")->check(CLI::PositiveNumber);
    synth->add_option("--ceiling", o.ceiling, "Ceiling of the energy fixpoint")->check(CLI::NonNegativeNumber);
    synth->add_option("--max-nodes", o.max_nodes, "Arena node limit")->check(CLI::PositiveNumber);
    synth->add_flag("--no-refine", o.no_refine, "Stop at the first winning cap");
    synth->add_flag("--timings", o.timings, "Report wall-clock times");
    synth->add_option("--format", o.format, "text or json")->check(formats);

    auto* verify = app.add_subcommand("verify", "Check a controller against the objectives");
    verify->add_option("game", o.game_path, "Game file")->required();
    verify->add_option("strategy", o.strategy_path, "Strategy file")->required();
    verify->add_option("--credit", o.credit, "Initial credit, e.g. 0,0");
    verify->add_option("--format", o.format, "text or json")->check(formats);

    auto* simulate = app.add_subcommand("simulate", "Play a controller against an adversary");
    simulate->add_option("game", o.game_path, "Game file")->required();
    simulate->add_option("strategy", o.strategy_path, "Strategy file")->required();
    simulate->add_option("--adversary", o.adversary, "random, spoiler or script")
        ->check(CLI::IsMember({"random", "spoiler", "script"}));
    simulate->add_option("--script", o.script, "Destinations for the script adversary")->delimiter(',');
    simulate->add_option("--seed", o.seed, "Seed of the random adversary");
    simulate->add_option("--steps", o.steps, "Number of edges to play");
    simulate->add_option("--credit", o.credit, "Initial credit, e.g. 0,0");
    simulate->add_option("--format", o.format, "text or json")->check(formats);

    auto* serve = app.add_subcommand("serve", "Serve the arena session API");
    serve->add_option("game", o.game_path, "Game file (the built-in lawnmower by default)");
    serve->add_option("strategy", o.strategy_path, "Strategy file");
    serve->add_option("--port", o.port, "TCP port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", o.host, "Address to bind");
    serve->add_option("--ui-dir", o.ui_dir, "Directory with the browser client")->check(CLI::ExistingDirectory);
    serve->add_option("--max-cap", o.max_cap, "Largest credit cap")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (synth->parsed()) return cmd_synth(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (serve->parsed()) return cmd_serve(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        print_input_error(err, e);
        return e.internal ? kInternalError : kInputError;
    } catch (const InternalError& e) {
        err << "internal error: " << e.detail() << "\n";
        return kInternalError;
    } catch (const SessionError& e) {
        err << "error: " << e.detail() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kUsage;
}

} // namespace gamesmith::cli
