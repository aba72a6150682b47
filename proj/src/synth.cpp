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

#include "gamesmith/synth.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_map>

#include "gamesmith/verify.hpp"

namespace gamesmith {

const char* to_string(SynthesisStatus status)
{
    switch (status) {
    case SynthesisStatus::Winning: return "WINNING";
    case SynthesisStatus::Losing: return "LOSING";
    case SynthesisStatus::Unknown: return "UNKNOWN";
    }
    return "?";
}

const char* to_string(Engine engine)
{
    switch (engine) {
    case Engine::Auto: return "auto";
    case Engine::Capped: return "capped";
    case Engine::Antichain: return "antichain";
    }
    return "?";
}

std::optional<Engine> parse_engine(std::string_view text)
{
    if (text == "auto") return Engine::Auto;
    if (text == "capped") return Engine::Capped;
    if (text == "antichain") return Engine::Antichain;
    return std::nullopt;
}

const char* to_string(CapAttempt::Outcome outcome)
{
    switch (outcome) {
    case CapAttempt::Outcome::Winning: return "winning";
    case CapAttempt::Outcome::NotWinning: return "not-winning";
    case CapAttempt::Outcome::TooLarge: return "too-large";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string memory_name(const CreditVector& c)
{
    std::string out = "m";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += '_';
        out += std::to_string(c[i]);
    }
    return out;
}

/// Splits the energy dimensions of the transformed game into true energy
/// dimensions and mp-derived ones (positions inside energy_dims).
struct DimSplit
{
    std::vector<std::size_t> energy;
    std::vector<std::size_t> derived;

    DimSplit(const GameStructure& g, const TransformReport& report)
    {
        const auto& dims = g.objectives().energy_dims;
        for (std::size_t i = 0; i < dims.size(); ++i) (report.is_derived(dims[i]) ? derived : energy).push_back(i);
    }

    CreditVector pick(const CreditVector& full, const std::vector<std::size_t>& positions) const
    {
        CreditVector out(positions.size());
        for (std::size_t i = 0; i < positions.size(); ++i) out[i] = full[positions[i]];
        return out;
    }

    CreditVector join(const CreditVector& e, const CreditVector& d) const
    {
        CreditVector out(energy.size() + derived.size());
        for (std::size_t i = 0; i < energy.size(); ++i) out[energy[i]] = e[i];
        for (std::size_t i = 0; i < derived.size(); ++i) out[derived[i]] = d[i];
        return out;
    }
};

/// Minimal credits, the chosen one and its slack, from the full credit
/// vectors that win at the initial state.
struct CreditSummary
{
    CreditAntichain credits;
    CreditVector chosen;
    CreditVector slack;
    CreditVector full;
};

CreditSummary summarize(const DimSplit& split, const std::vector<CreditVector>& winning)
{
    CreditSummary out;
    std::vector<CreditVector> projected;
    for (const auto& c : winning) projected.push_back(split.pick(c, split.energy));
    out.credits = CreditAntichain(std::move(projected));
    out.chosen = out.credits.elements().front();
    std::vector<CreditVector> slacks;
    for (const auto& c : winning)
        if (split.pick(c, split.energy) == out.chosen) slacks.push_back(split.pick(c, split.derived));
    out.slack = min_elements(std::move(slacks)).front();
    out.full = split.join(out.chosen, out.slack);
    return out;
}

struct SolvedArena
{
    Arena arena;
    ParityResult solution;
    std::vector<CreditVector> winning_at_init;
};

SolvedArena solve_at(const GameStructure& g, std::int64_t cap, std::size_t max_nodes)
{
    SolvedArena s{expand_capped(g, cap, max_nodes), {}, {}};
    s.solution = solve_parity(s.arena);
    const std::size_t block = (s.arena.node_count() - 1) / g.state_count();
    const std::size_t first = g.initial() * block;
    for (std::size_t v = first; v < first + block; ++v)
        if (s.solution.system_wins(static_cast<NodeIndex>(v)))
            s.winning_at_init.push_back(s.arena.credit_of(static_cast<NodeIndex>(v)));
    return s;
}

void finish_winning(SynthesisResult& r, const GameStructure& original, const GameStructure& g, const SolvedArena& solved,
                    const CreditSummary& summary, const SynthesisConfig& config)
{
    r.status = SynthesisStatus::Winning;
    r.credits = summary.credits;
    r.chosen_credit = summary.chosen;
    r.slack = summary.slack;
    r.last_cap = solved.arena.cap();
    r.strategy = extract_strategy(g, solved.arena, solved.solution, summary.full, original.name() + "_controller");
    if (config.self_verify) {
        const VerificationReport report = verify_all(original, *r.strategy, summary.chosen);
        if (!report.pass)
            throw InternalError("synthesized strategy fails verification with credit " + to_string(summary.chosen));
    }
}

std::int64_t max_component(const StateAntichains& credits)
{
    std::int64_t m = 0;
    for (const auto& a : credits)
        for (const auto& c : a.elements())
            for (std::int64_t x : c) m = std::max(m, x);
    return m;
}

} // namespace

StrategyDoc extract_strategy(const GameStructure& game, const Arena& arena, const ParityResult& solution,
                             const CreditVector& start, const std::string& name)
{
    StrategyDoc s;
    s.name = name;
    s.game = game.name();
    s.initial_memory = 0;

    std::unordered_map<std::size_t, std::size_t> memory_of_code;
    const std::size_t block = (arena.node_count() - 1) / game.state_count();
    auto memory = [&](NodeIndex v) {
        const std::size_t code = v % block;
        auto [it, fresh] = memory_of_code.try_emplace(code, s.memories.size());
        if (fresh) s.memories.push_back(memory_name(arena.credit_of(v)));
        return s.memories[it->second];
    };

    std::vector<char> seen(arena.node_count(), 0);
    const NodeIndex root = arena.node_of(game.initial(), start);
    if (!solution.system_wins(root)) throw InternalError("extract_strategy: start node is not winning");
    std::deque<NodeIndex> queue{root};
    seen[root] = 1;
    memory(root);
    while (!queue.empty()) {
        const NodeIndex v = queue.front();
        queue.pop_front();
        const StateIndex state = arena.state_of(v);
        const std::string mem = memory(v);
        const std::string& src = game.state(state).id;
        const auto succ = arena.successors(v);
        auto follow = [&](std::size_t i) {
            const NodeIndex t = succ[i];
            const EdgeIndex e = arena.move_edge(v, i);
            if (t == arena.sink() || e == npos) throw InternalError("extract_strategy: winning play reaches the sink");
            const std::string& dst = game.state(game.edge(e).dst).id;
            s.updates[{mem, src, dst}] = memory(t);
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
            return dst;
        };
        if (arena.owner(v) == Player::System) {
            const NodeIndex target = solution.strategy[v];
            const auto it = std::find(succ.begin(), succ.end(), target);
            if (it == succ.end()) throw InternalError("extract_strategy: no winning move at " + src);
            s.moves[{mem, src}] = follow(static_cast<std::size_t>(it - succ.begin()));
        } else {
            for (std::size_t i = 0; i < succ.size(); ++i) follow(i);
        }
    }
    return s;
}

SynthesisResult synthesize(const GameStructure& game, const ObjectiveSpec& spec, const SynthesisConfig& config)
{
    return synthesize(with_objectives(game, spec), config);
}

SynthesisResult synthesize(const GameStructure& game, const SynthesisConfig& config)
{
    const auto started = Clock::now();
    SynthesisResult r;
    TransformedGame tg = mp_transform(game);
    r.transform = tg.report;
    const GameStructure& g = tg.game;
    const ObjectiveSpec& spec = g.objectives();
    const DimSplit split(g, r.transform);
    const bool recurrence = spec.has_recurrence();

    Engine engine = config.engine;
    if (engine == Engine::Auto) engine = recurrence ? Engine::Capped : Engine::Antichain;
    if (engine == Engine::Antichain && recurrence)
        throw Error("the antichain engine handles energy and mean-payoff objectives only");
    r.engine_used = engine;

    auto done = [&]() -> SynthesisResult {
        r.total_millis = millis_since(started);
        return r;
    };

    if (recurrence) {
        ObjectiveSpec plain;
        plain.buchi_targets = spec.buchi_targets;
        plain.use_parity = spec.use_parity;
        const SolvedArena solved = solve_at(with_objectives(g, plain), 0, config.max_arena_nodes);
        if (solved.winning_at_init.empty()) {
            r.status = SynthesisStatus::Losing;
            r.notes.push_back("player 2 wins the recurrence objective alone, ignoring every quantitative dimension");
            return done();
        }
    }

    std::optional<EnergyFixpoint> fixpoint;
    if (!spec.energy_dims.empty()) {
        fixpoint = energy_fixpoint(g, config.ceiling);
        r.fixpoint_status = fixpoint->status;
        if (!fixpoint->winning_at(g.initial()) && fixpoint->status == FixpointStatus::Exact) {
            r.status = SynthesisStatus::Losing;
            r.notes.push_back("no initial credit suffices for the quantitative dimensions, even ignoring recurrence");
            return done();
        }
    }

    if (engine == Engine::Antichain) {
        const std::int64_t ceiling = fixpoint ? fixpoint->ceiling : 0;
        if (fixpoint && !fixpoint->winning_at(g.initial())) {
            r.status = SynthesisStatus::Unknown;
            r.last_cap = ceiling;
            r.notes.push_back("no credit within ceiling " + std::to_string(ceiling));
            return done();
        }
        std::vector<CreditVector> winning =
            fixpoint ? fixpoint->credits[g.initial()].elements() : std::vector<CreditVector>{CreditVector()};
        const CreditSummary summary = summarize(split, winning);
        // Clamping at the largest minimal credit keeps every state's
        // requirement representable, so this arena wins from summary.full.
        const std::int64_t cap = std::max<std::int64_t>(1, fixpoint ? max_component(fixpoint->credits) : 0);
        const auto t = Clock::now();
        try {
            const SolvedArena solved = solve_at(g, cap, config.max_arena_nodes);
            r.attempts.push_back({cap, solved.arena.node_count(), CapAttempt::Outcome::Winning, millis_since(t)});
            finish_winning(r, game, g, solved, summary, config);
        } catch (const ArenaTooLarge& e) {
            r.attempts.push_back({cap, e.required(), CapAttempt::Outcome::TooLarge, millis_since(t)});
            r.status = SynthesisStatus::Winning;
            r.credits = summary.credits;
            r.chosen_credit = summary.chosen;
            r.slack = summary.slack;
            r.notes.push_back("credits are exact but the strategy arena exceeds the node limit");
        }
        return done();
    }

    std::int64_t cap = std::max<std::int64_t>(1, config.initial_cap.value_or(max_abs_weight(g)));
    cap = std::min(cap, std::max<std::int64_t>(1, config.max_cap));
    std::optional<SolvedArena> best;
    std::optional<CreditSummary> best_summary;
    while (true) {
        r.last_cap = cap;
        const auto t = Clock::now();
        const std::size_t size = capped_arena_size(g.state_count(), spec.energy_dims.size(), cap);
        if (size > config.max_arena_nodes) {
            r.attempts.push_back({cap, size, CapAttempt::Outcome::TooLarge, millis_since(t)});
            r.notes.push_back("arena for cap " + std::to_string(cap) + " exceeds the node limit");
            break;
        }
        SolvedArena solved = solve_at(g, cap, config.max_arena_nodes);
        const bool wins = !solved.winning_at_init.empty();
        r.attempts.push_back({cap, solved.arena.node_count(),
                              wins ? CapAttempt::Outcome::Winning : CapAttempt::Outcome::NotWinning, millis_since(t)});
        if (wins) {
            CreditSummary summary = summarize(split, solved.winning_at_init);
            const bool improved = !best_summary || summary.credits != best_summary->credits;
            if (!improved) break;
            best_summary = std::move(summary);
            best = std::move(solved);
            const bool minimal = best_summary->credits.size() == 1 && best_summary->chosen.is_zero();
            if (!config.refine || minimal) break;
        } else if (best) {
            break;
        }
        if (spec.energy_dims.empty() || cap >= config.max_cap) break;
        cap = std::min(cap * 2, config.max_cap);
    }
    if (best) {
        finish_winning(r, game, g, *best, *best_summary, config);
        return done();
    }
    r.status = SynthesisStatus::Unknown;
    return done();
}

} // namespace gamesmith
