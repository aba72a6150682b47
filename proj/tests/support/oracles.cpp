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

#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

namespace gamesmith::testing {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::string state_name(std::size_t i)
{
    return "s" + std::to_string(i);
}

} // namespace

GameStructure random_game(Rng& rng, const RandomGameParams& p)
{
    RawGame raw;
    raw.name = "random";
    raw.dimensions = p.dimensions;
    const std::size_t n = uniform(rng, p.min_states, p.max_states);
    std::bernoulli_distribution environment(p.environment_share);
    for (std::size_t i = 0; i < n; ++i) {
        RawGame::RawState s;
        s.id = state_name(i);
        s.owner = environment(rng) ? 2 : 1;
        s.initial = i == 0;
        if (p.parity) s.priority = static_cast<std::uint32_t>(uniform(rng, 0, p.max_priority));
        raw.states.push_back(s);
    }
    std::uniform_int_distribution<Weight> weight(-p.max_weight, p.max_weight);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t degree = uniform(rng, 1, std::min(p.max_out_degree, n));
        std::vector<std::size_t> targets(n);
        for (std::size_t j = 0; j < n; ++j) targets[j] = j;
        std::shuffle(targets.begin(), targets.end(), rng);
        targets.resize(degree);
        for (std::size_t t : targets) {
            RawGame::RawEdge e;
            e.src = state_name(i);
            e.dst = state_name(t);
            for (std::size_t d = 0; d < p.dimensions; ++d) e.weights.push_back(weight(rng));
            raw.edges.push_back(e);
        }
    }
    for (std::size_t d = 0; d < p.dimensions; ++d) {
        RawGame::RawObjective o;
        o.dim = d + 1;
        if (std::find(p.mean_payoff_dims.begin(), p.mean_payoff_dims.end(), d) != p.mean_payoff_dims.end()) {
            o.kind = RawGame::RawObjective::Kind::MeanPayoff;
            const auto den = static_cast<std::int64_t>(uniform(rng, 1, 2));
            const auto num = static_cast<std::int64_t>(uniform(rng, 0, static_cast<std::size_t>(p.max_weight))) * den -
                             static_cast<std::int64_t>(uniform(rng, 0, 1));
            o.threshold = Rational{num, den};
        } else {
            o.kind = RawGame::RawObjective::Kind::Energy;
        }
        raw.objectives.push_back(o);
    }
    if (p.buchi) {
        RawGame::RawObjective o;
        o.kind = RawGame::RawObjective::Kind::Buchi;
        const std::size_t count = uniform(rng, 1, std::max<std::size_t>(1, n / 2));
        std::vector<std::size_t> picks(n);
        for (std::size_t j = 0; j < n; ++j) picks[j] = j;
        std::shuffle(picks.begin(), picks.end(), rng);
        picks.resize(count);
        std::sort(picks.begin(), picks.end());
        for (std::size_t j : picks) o.states.push_back(state_name(j));
        raw.objectives.push_back(o);
    }
    if (p.parity) {
        RawGame::RawObjective o;
        o.kind = RawGame::RawObjective::Kind::Parity;
        raw.objectives.push_back(o);
    }
    return validate_game(raw);
}

StrategyDoc random_strategy(Rng& rng, const GameStructure& game, std::size_t memories)
{
    StrategyDoc s;
    s.name = "random_strategy";
    s.game = game.name();
    for (std::size_t m = 0; m < memories; ++m) s.memories.push_back("q" + std::to_string(m));
    s.initial_memory = 0;
    for (std::size_t m = 0; m < memories; ++m)
        for (StateIndex st = 0; st < game.state_count(); ++st) {
            const auto out = game.out_edges(st);
            if (game.state(st).owner == Player::System)
                s.moves[{s.memories[m], game.state(st).id}] = game.state(out[uniform(rng, 0, out.size() - 1)].dst).id;
            for (const Edge& e : out)
                s.updates[{s.memories[m], game.state(e.src).id, game.state(e.dst).id}] =
                    s.memories[uniform(rng, 0, memories - 1)];
        }
    return s;
}

std::vector<std::vector<CreditVector>> clamped_minimal_credits(const GameStructure& game, std::int64_t ceiling)
{
    const auto& dims = game.objectives().energy_dims;
    const std::size_t k = dims.size();
    const auto levels = static_cast<std::size_t>(ceiling + 1);
    std::size_t block = 1;
    for (std::size_t i = 0; i < k; ++i) block *= levels;

    auto decode = [&](std::size_t code) {
        CreditVector c(k);
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = static_cast<std::int64_t>(code % levels);
            code /= levels;
        }
        return c;
    };
    auto encode = [&](const CreditVector& c) {
        std::size_t code = 0, scale = 1;
        for (std::size_t i = 0; i < k; ++i) {
            code += static_cast<std::size_t>(c[i]) * scale;
            scale *= levels;
        }
        return code;
    };
    // Successor of (s, c) along e, or nullopt on underflow.
    auto next = [&](const Edge& e, const CreditVector& c) -> std::optional<std::size_t> {
        CreditVector out(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::int64_t v = c[i] + e.weights[dims[i]];
            if (v < 0) return std::nullopt;
            out[i] = std::min(v, ceiling);
        }
        return e.dst * block + encode(out);
    };

    const std::size_t n = game.state_count() * block;
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            const StateIndex s = v / block;
            const CreditVector c = decode(v % block);
            bool ok;
            if (game.state(s).owner == Player::System) {
                ok = false;
                for (const Edge& e : game.out_edges(s)) {
                    auto t = next(e, c);
                    if (t && alive[*t]) ok = true;
                }
            } else {
                ok = true;
                for (const Edge& e : game.out_edges(s)) {
                    auto t = next(e, c);
                    if (!t || !alive[*t]) ok = false;
                }
            }
            if (!ok) {
                alive[v] = 0;
                changed = true;
            }
        }
    }

    std::vector<std::vector<CreditVector>> result(game.state_count());
    for (StateIndex s = 0; s < game.state_count(); ++s) {
        std::vector<CreditVector> winning;
        for (std::size_t code = 0; code < block; ++code)
            if (alive[s * block + code]) winning.push_back(decode(code));
        for (const auto& c : winning) {
            bool minimal = true;
            for (const auto& d : winning)
                if (d != c && d.below(c)) minimal = false;
            if (minimal) result[s].push_back(c);
        }
        std::sort(result[s].begin(), result[s].end());
    }
    return result;
}

namespace {

/// Min priority on the cycle of the unique play from `start` when both
/// players follow memoryless choices.
std::uint32_t play_min_recurring(const Arena& arena, const std::vector<NodeIndex>& choice, NodeIndex start)
{
    std::vector<int> position(arena.node_count(), -1);
    std::vector<NodeIndex> path;
    NodeIndex v = start;
    while (position[v] < 0) {
        position[v] = static_cast<int>(path.size());
        path.push_back(v);
        v = choice[v];
    }
    std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t i = static_cast<std::size_t>(position[v]); i < path.size(); ++i)
        m = std::min(m, arena.priority(path[i]));
    return m;
}

/// Calls f on every choice vector where nodes of `player` range over their
/// successors and the others keep `base`; stops when f returns true.
bool for_each_choice(const Arena& arena, Player player, std::vector<NodeIndex> base,
                     const std::function<bool(const std::vector<NodeIndex>&)>& f)
{
    std::vector<NodeIndex> nodes;
    for (NodeIndex v = 0; v < arena.node_count(); ++v)
        if (arena.owner(v) == player) nodes.push_back(v);
    std::vector<std::size_t> digit(nodes.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < nodes.size(); ++i) base[nodes[i]] = arena.successors(nodes[i])[digit[i]];
        if (f(base)) return true;
        std::size_t i = 0;
        for (; i < nodes.size(); ++i) {
            if (++digit[i] < arena.successors(nodes[i]).size()) break;
            digit[i] = 0;
        }
        if (i == nodes.size()) return false;
    }
}

} // namespace

Player parity_winner_by_enumeration(const Arena& arena, NodeIndex start)
{
    std::vector<NodeIndex> base(arena.node_count(), kNoNode);
    const bool system_wins = for_each_choice(arena, Player::System, base, [&](const std::vector<NodeIndex>& sigma) {
        return strategy_wins_by_enumeration(arena, sigma, start);
    });
    return system_wins ? Player::System : Player::Environment;
}

bool strategy_wins_by_enumeration(const Arena& arena, const std::vector<NodeIndex>& sigma, NodeIndex start)
{
    const bool refuted = for_each_choice(arena, Player::Environment, sigma, [&](const std::vector<NodeIndex>& both) {
        return play_min_recurring(arena, both, start) % 2 == 1;
    });
    return !refuted;
}

std::vector<SimpleCycle> simple_cycles(const ProductGraph& p)
{
    std::vector<SimpleCycle> out;
    const std::size_t n = p.size();
    std::vector<char> on_path(n, 0);
    SimpleCycle current;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t root, std::size_t v) {
        for (std::size_t i = 0; i < p.moves[v].size(); ++i) {
            const std::size_t t = p.moves[v][i].target;
            if (t == root) {
                SimpleCycle c = current;
                c.nodes.push_back(v);
                c.moves.push_back(i);
                out.push_back(std::move(c));
            } else if (t > root && !on_path[t]) {
                on_path[t] = 1;
                current.nodes.push_back(v);
                current.moves.push_back(i);
                dfs(root, t);
                current.nodes.pop_back();
                current.moves.pop_back();
                on_path[t] = 0;
            }
        }
    };
    for (std::size_t root = 0; root < n; ++root) {
        on_path[root] = 1;
        dfs(root, root);
        on_path[root] = 0;
    }
    return out;
}

namespace {

std::int64_t cycle_sum(const ProductGraph& p, const GameStructure& game, const SimpleCycle& c, std::size_t dim)
{
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) sum += game.edge(p.moves[c.nodes[i]][c.moves[i]].edge).weights[dim];
    return sum;
}

} // namespace

std::optional<Rational> max_mean_by_cycles(const ProductGraph& p, const GameStructure& game, std::size_t dim)
{
    std::optional<Rational> best;
    for (const auto& c : simple_cycles(p)) {
        const Rational mean = Rational::reduced(cycle_sum(p, game, c, dim), static_cast<std::int64_t>(c.nodes.size()));
        if (!best || *best < mean) best = mean;
    }
    return best;
}

std::int64_t min_prefix_by_walks(const ProductGraph& p, const GameStructure& game, std::size_t dim, std::size_t max_len)
{
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> reach(p.size(), inf), next(p.size());
    reach[0] = 0;
    std::int64_t best = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::fill(next.begin(), next.end(), inf);
        for (std::size_t v = 0; v < p.size(); ++v) {
            if (reach[v] == inf) continue;
            for (const auto& mv : p.moves[v])
                next[mv.target] = std::min(next[mv.target], reach[v] + game.edge(mv.edge).weights[dim]);
        }
        reach.swap(next);
        for (std::int64_t x : reach)
            if (x != inf) best = std::min(best, x);
    }
    return best;
}

bool has_negative_cycle(const ProductGraph& p, const GameStructure& game, std::size_t dim)
{
    for (const auto& c : simple_cycles(p))
        if (cycle_sum(p, game, c, dim) < 0) return true;
    return false;
}

bool has_rejecting_cycle(const ProductGraph& p, const GameStructure& game)
{
    const auto& targets = game.objectives().buchi_targets;
    for (const auto& c : simple_cycles(p)) {
        bool accepting = false;
        for (std::size_t v : c.nodes)
            accepting = accepting || std::binary_search(targets.begin(), targets.end(), p.nodes[v].state);
        if (!accepting) return true;
    }
    return false;
}

} // namespace gamesmith::testing
