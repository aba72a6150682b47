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

#include "gamesmith/verify.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace gamesmith {

CompiledStrategy compile_strategy(const GameStructure& game, const StrategyDoc& strategy)
{
    CompiledStrategy c;
    c.memory_count = strategy.memories.size();
    c.initial_memory = strategy.initial_memory;
    c.state_count = game.state_count();
    c.edge_count = game.edges().size();
    c.memory_names = strategy.memories;
    c.move.assign(c.memory_count * c.state_count, npos);
    c.illegal_move.assign(c.memory_count * c.state_count, 0);
    c.update.assign(c.memory_count * c.edge_count, npos);

    auto resolve = [&](const std::string& id, const std::string& where) {
        auto s = game.find_state(id);
        if (!s)
            throw ProductError(ProductErrorKind::UnknownState,
                               "strategy " + where + " names unknown state '" + id + "'");
        return *s;
    };
    auto memory = [&](const std::string& id) {
        auto m = strategy.find_memory(id);
        if (!m) throw ProductError(ProductErrorKind::UnknownState, "strategy names unknown memory '" + id + "'");
        return *m;
    };
    for (const auto& [key, dst_id] : strategy.moves) {
        const std::size_t m = memory(key.first);
        const StateIndex s = resolve(key.second, "move");
        const StateIndex dst = resolve(dst_id, "move");
        c.move[m * c.state_count + s] = dst;
        c.illegal_move[m * c.state_count + s] = !game.find_edge(s, dst).has_value();
    }
    for (const auto& [key, next] : strategy.updates) {
        const std::size_t m = memory(std::get<0>(key));
        const StateIndex src = resolve(std::get<1>(key), "update");
        const StateIndex dst = resolve(std::get<2>(key), "update");
        auto e = game.find_edge(src, dst);
        if (!e)
            throw ProductError(ProductErrorKind::IllegalStrategyMove,
                               "update on " + std::get<1>(key) + " -> " + std::get<2>(key) + ", which is not an edge");
        c.update[m * c.edge_count + *e] = memory(next);
    }
    return c;
}

namespace {

std::string node_label(const GameStructure& game, const CompiledStrategy& s, StateIndex state, std::size_t memory)
{
    return game.state(state).id + "/" + s.memory_names[memory];
}

/// Shortest paths (in edges) from node 0; ties resolved by exploring moves
/// in index order.
std::vector<std::size_t> bfs_parents(const ProductGraph& p, std::vector<std::size_t>& dist)
{
    std::vector<std::size_t> parent(p.size(), npos);
    dist.assign(p.size(), npos);
    std::deque<std::size_t> queue{0};
    dist[0] = 0;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (const auto& mv : p.moves[v])
            if (dist[mv.target] == npos) {
                dist[mv.target] = dist[v] + 1;
                parent[mv.target] = v;
                queue.push_back(mv.target);
            }
    }
    return parent;
}

/// Nodes from 0 to target, target excluded.
std::vector<std::size_t> path_to(const std::vector<std::size_t>& parent, std::size_t target)
{
    std::vector<std::size_t> path;
    for (std::size_t v = parent[target]; v != npos; v = parent[v]) path.push_back(v);
    if (target != 0 && path.empty()) return path;
    std::reverse(path.begin(), path.end());
    return path;
}

/// Strongly connected components of the subgraph induced by `allowed`.
/// component[v] is npos outside `allowed`; cyclic[c] tells whether c
/// contains a cycle.
struct Components
{
    std::vector<std::size_t> component;
    std::vector<char> cyclic;
};

Components strongly_connected(const ProductGraph& p, const std::vector<char>& allowed)
{
    const std::size_t n = p.size();
    Components out;
    out.component.assign(n, npos);
    std::vector<std::size_t> index(n, npos), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    struct Frame
    {
        std::size_t v;
        std::size_t next;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (!allowed[root] || index[root] != npos) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& moves = p.moves[f.v];
            if (f.next < moves.size()) {
                const std::size_t w = moves[f.next++].target;
                if (!allowed[w]) continue;
                if (index[w] == npos) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::size_t v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] != index[v]) continue;
            const std::size_t c = out.cyclic.size();
            std::size_t members = 0;
            while (true) {
                const std::size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                out.component[w] = c;
                ++members;
                if (w == v) break;
            }
            bool cyclic = members > 1;
            if (!cyclic)
                for (const auto& mv : p.moves[v]) cyclic = cyclic || mv.target == v;
            out.cyclic.push_back(cyclic);
        }
    }
    return out;
}

/// Shortest cycle through `start` staying inside its component.
std::vector<std::size_t> cycle_through(const ProductGraph& p, const Components& comps, std::size_t start)
{
    const std::size_t c = comps.component[start];
    std::vector<std::size_t> parent(p.size(), npos);
    std::vector<char> seen(p.size(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (const auto& mv : p.moves[v]) {
            if (comps.component[mv.target] != c) continue;
            if (mv.target == start) {
                std::vector<std::size_t> cycle;
                for (std::size_t u = v; u != start; u = parent[u]) cycle.push_back(u);
                cycle.push_back(start);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (!seen[mv.target]) {
                seen[mv.target] = 1;
                parent[mv.target] = v;
                queue.push_back(mv.target);
            }
        }
    }
    return {start};
}

/// Picks the candidate closest to the initial node (ties by label) and
/// builds the lasso through it.
std::optional<Lasso> closest_lasso(const ProductGraph& p, const Components& comps, const std::vector<char>& candidate)
{
    std::vector<std::size_t> dist;
    const auto parent = bfs_parents(p, dist);
    std::size_t best = npos;
    for (std::size_t v = 0; v < p.size(); ++v) {
        if (!candidate[v] || dist[v] == npos) continue;
        if (best == npos || dist[v] < dist[best] || (dist[v] == dist[best] && p.label(v) < p.label(best))) best = v;
    }
    if (best == npos) return std::nullopt;
    return Lasso{path_to(parent, best), cycle_through(p, comps, best)};
}

/// Rotates a cycle so that it starts at its node closest to the initial
/// node, and prepends the stem to it.
Lasso anchor_cycle(const ProductGraph& p, std::vector<std::size_t> cycle)
{
    std::vector<std::size_t> dist;
    const auto parent = bfs_parents(p, dist);
    std::size_t at = 0;
    for (std::size_t i = 1; i < cycle.size(); ++i)
        if (dist[cycle[i]] < dist[cycle[at]] ||
            (dist[cycle[i]] == dist[cycle[at]] && p.label(cycle[i]) < p.label(cycle[at])))
            at = i;
    std::rotate(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(at), cycle.end());
    return Lasso{path_to(parent, cycle.front()), std::move(cycle)};
}

/// Follows `parent` from a node relaxed in the last Bellman-Ford round into
/// the cycle it hangs from.
std::vector<std::size_t> extract_cycle(const std::vector<std::size_t>& parent, std::size_t v, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) v = parent[v];
    std::vector<std::size_t> cycle{v};
    for (std::size_t u = parent[v]; u != v; u = parent[u]) cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

// Shortest violating prefix search keeps one parent row per length.
constexpr std::size_t kLayeredWitnessLimit = 3000;

} // namespace

ProductGraph build_product(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit)
{
    return build_product(game, compile_strategy(game, strategy), credit);
}

ProductGraph build_product(const GameStructure& game, const CompiledStrategy& s, const CreditVector& credit)
{
    const auto& energy = game.objectives().energy_dims;
    if (credit.size() != energy.size())
        throw ProductError(ProductErrorKind::BadCredit, "credit has " + std::to_string(credit.size()) +
                                                            " components, the game has " +
                                                            std::to_string(energy.size()) + " energy dimensions");
    for (std::int64_t c : credit)
        if (c < 0) throw ProductError(ProductErrorKind::BadCredit, "credit components must be non-negative");

    ProductGraph p;
    p.initial_credit = credit;
    const std::size_t S = game.state_count();
    std::vector<std::size_t> index(S * s.memory_count, npos);
    std::vector<std::size_t> parent;

    auto path = [&](std::size_t v) {
        std::vector<std::size_t> chain;
        for (std::size_t u = v; u != npos; u = parent[u]) chain.push_back(u);
        std::vector<std::string> labels;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) labels.push_back(p.labels[*it]);
        return labels;
    };
    auto intern = [&](StateIndex state, std::size_t memory, std::size_t from) {
        std::size_t& slot = index[memory * S + state];
        if (slot == npos) {
            slot = p.nodes.size();
            p.nodes.push_back({state, memory});
            p.moves.emplace_back();
            p.labels.push_back(node_label(game, s, state, memory));
            parent.push_back(from);
        }
        return slot;
    };

    intern(game.initial(), s.initial_memory, npos);
    for (std::size_t v = 0; v < p.nodes.size(); ++v) {
        const auto [state, memory] = p.nodes[v];
        auto follow = [&](EdgeIndex e) {
            const std::size_t next = s.update_at(memory, e);
            if (next == npos)
                throw ProductError(ProductErrorKind::UndefinedUpdate,
                                   "no update for memory " + s.memory_names[memory] + " on edge " + game.state(state).id +
                                       " -> " + game.state(game.edge(e).dst).id,
                                   path(v));
            const std::size_t t = intern(game.edge(e).dst, next, v);
            p.moves[v].push_back({t, e});
        };
        if (game.state(state).owner == Player::System) {
            const StateIndex dst = s.move_at(memory, state);
            if (dst == npos)
                throw ProductError(ProductErrorKind::UndefinedMove,
                                   "no move for memory " + s.memory_names[memory] + " at state " + game.state(state).id,
                                   path(v));
            if (s.illegal_move[memory * S + state])
                throw ProductError(ProductErrorKind::IllegalStrategyMove,
                                   "move " + s.memory_names[memory] + " " + game.state(state).id + " -> " +
                                       game.state(dst).id + " is not an edge",
                                   path(v));
            follow(*game.find_edge(state, dst));
        } else {
            const auto [first, last] = game.out_range(state);
            for (EdgeIndex e = first; e < last; ++e) follow(e);
        }
    }
    for (std::size_t m = 0; m < s.memory_count; ++m)
        for (StateIndex st = 0; st < S; ++st)
            if (game.state(st).owner == Player::System && s.move_at(m, st) == npos && index[m * S + st] == npos)
                ++p.unreachable_unspecified;
    return p;
}

namespace {

/// Shortest prefix of at most max_len moves along which credit plus the
/// running sum turns negative; ties go to the smallest end label.
template <typename WeightOf>
std::optional<Lasso> shortest_violation(const ProductGraph& p, const WeightOf& weight, std::int64_t credit,
                                        std::size_t max_len)
{
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    const std::size_t n = p.size();
    std::vector<std::int64_t> best(n, inf), next(n, inf);
    std::vector<std::vector<std::uint32_t>> parents;
    best[0] = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::fill(next.begin(), next.end(), inf);
        std::vector<std::uint32_t> row(n, static_cast<std::uint32_t>(-1));
        for (std::size_t v = 0; v < n; ++v) {
            if (best[v] == inf) continue;
            for (const auto& mv : p.moves[v])
                if (best[v] + weight(mv) < next[mv.target]) {
                    next[mv.target] = best[v] + weight(mv);
                    row[mv.target] = static_cast<std::uint32_t>(v);
                }
        }
        parents.push_back(std::move(row));
        std::size_t hit = npos;
        for (std::size_t v = 0; v < n; ++v)
            if (next[v] != inf && credit + next[v] < 0 && (hit == npos || p.label(v) < p.label(hit))) hit = v;
        if (hit != npos) {
            Lasso w;
            std::size_t v = hit;
            for (std::size_t l = len; l > 0; --l) {
                w.stem.push_back(v);
                v = parents[l - 1][v];
            }
            w.stem.push_back(0);
            std::reverse(w.stem.begin(), w.stem.end());
            return w;
        }
        std::swap(best, next);
    }
    return std::nullopt;
}

} // namespace

EnergyCheck check_energy(const ProductGraph& p, const GameStructure& game, std::size_t dim, std::int64_t credit)
{
    EnergyCheck out;
    out.dim = dim;
    out.credit = credit;
    const std::size_t n = p.size();
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    auto weight = [&](const ProductMove& mv) { return game.edge(mv.edge).weights[dim]; };

    // Label-correcting relaxation; an improvement in round n means a
    // reachable negative cycle.
    std::vector<std::int64_t> dist(n, inf);
    std::vector<std::size_t> parent(n, npos);
    dist[0] = 0;
    std::size_t relaxed_last = npos;
    for (std::size_t round = 0; round < n; ++round) {
        relaxed_last = npos;
        for (std::size_t v = 0; v < n; ++v) {
            if (dist[v] == inf) continue;
            for (const auto& mv : p.moves[v])
                if (dist[v] + weight(mv) < dist[mv.target]) {
                    dist[mv.target] = dist[v] + weight(mv);
                    parent[mv.target] = v;
                    relaxed_last = mv.target;
                }
        }
        if (relaxed_last == npos) break;
    }
    if (relaxed_last != npos) {
        out.pass = false;
        out.min_prefix_sum = std::nullopt;
        if (n <= kLayeredWitnessLimit)
            out.witness = shortest_violation(p, weight, credit, n);
        if (!out.witness) out.witness = anchor_cycle(p, extract_cycle(parent, relaxed_last, n));
        return out;
    }
    std::int64_t lowest = 0;
    for (std::int64_t d : dist)
        if (d != inf) lowest = std::min(lowest, d);
    out.min_prefix_sum = lowest;
    out.pass = credit + lowest >= 0;
    if (out.pass) return out;

    // The minimum is reached on a simple path, so some length below n
    // violates.
    if (n <= kLayeredWitnessLimit) {
        out.witness = shortest_violation(p, weight, credit, n);
        if (out.witness) return out;
    }
    // Fallback: follow the shortest-path tree to the first violation.
    std::size_t low = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (dist[v] != inf && dist[v] < dist[low]) low = v;
    std::vector<std::size_t> chain;
    for (std::size_t v = low; v != npos; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    Lasso w;
    for (std::size_t v : chain) {
        w.stem.push_back(v);
        if (credit + dist[v] < 0) break;
    }
    out.witness = std::move(w);
    return out;
}

Rational max_cycle_mean(const ProductGraph& p, const GameStructure& game, std::size_t dim)
{
    const std::size_t n = p.size();
    const Components comps = strongly_connected(p, std::vector<char>(n, 1));
    constexpr std::int64_t neg_inf = std::numeric_limits<std::int64_t>::min();
    auto weight = [&](const ProductMove& mv) { return game.edge(mv.edge).weights[dim]; };

    std::optional<Rational> best;
    std::vector<std::vector<std::size_t>> members(comps.cyclic.size());
    for (std::size_t v = 0; v < n; ++v) members[comps.component[v]].push_back(v);

    std::vector<std::size_t> local(n, npos);
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (!comps.cyclic[c]) continue;
        const auto& nodes = members[c];
        const std::size_t m = nodes.size();
        for (std::size_t i = 0; i < m; ++i) local[nodes[i]] = i;

        // Karp: D_k(v) = max weight of a k-edge walk from nodes[0] to v.
        auto advance = [&](const std::vector<std::int64_t>& cur, std::vector<std::int64_t>& nxt) {
            std::fill(nxt.begin(), nxt.end(), neg_inf);
            for (std::size_t i = 0; i < m; ++i) {
                if (cur[i] == neg_inf) continue;
                for (const auto& mv : p.moves[nodes[i]]) {
                    if (comps.component[mv.target] != c) continue;
                    const std::size_t j = local[mv.target];
                    nxt[j] = std::max(nxt[j], cur[i] + weight(mv));
                }
            }
        };
        std::vector<std::int64_t> cur(m, neg_inf), nxt(m);
        cur[0] = 0;
        for (std::size_t k = 0; k < m; ++k) {
            advance(cur, nxt);
            std::swap(cur, nxt);
        }
        const std::vector<std::int64_t> dn = cur;

        // Second pass: min over k of (D_n(v) - D_k(v)) / (n - k).
        std::vector<std::optional<Rational>> worst(m);
        std::fill(cur.begin(), cur.end(), neg_inf);
        cur[0] = 0;
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t i = 0; i < m; ++i) {
                if (dn[i] == neg_inf || cur[i] == neg_inf) continue;
                const Rational r = Rational::reduced(dn[i] - cur[i], static_cast<std::int64_t>(m - k));
                if (!worst[i] || r < *worst[i]) worst[i] = r;
            }
            advance(cur, nxt);
            std::swap(cur, nxt);
        }
        for (std::size_t i = 0; i < m; ++i)
            if (worst[i] && (!best || *best < *worst[i])) best = worst[i];
        for (std::size_t v : nodes) local[v] = npos;
    }
    return best.value_or(Rational{0, 1});
}

MeanPayoffCheck check_mean_payoff(const ProductGraph& p, const GameStructure& game, std::size_t dim, Rational threshold)
{
    MeanPayoffCheck out;
    out.dim = dim;
    out.threshold = threshold;
    out.max_cycle_mean = max_cycle_mean(p, game, dim);
    out.pass = !(threshold < out.max_cycle_mean);
    if (out.pass) return out;

    // Witness: a cycle with positive sum of q*w - p, found by longest-path
    // relaxation from every node at once.
    const std::size_t n = p.size();
    std::vector<__int128> dist(n, 0);
    std::vector<std::size_t> parent(n, npos);
    std::size_t relaxed_last = npos;
    for (std::size_t round = 0; round <= n; ++round) {
        relaxed_last = npos;
        for (std::size_t v = 0; v < n; ++v)
            for (const auto& mv : p.moves[v]) {
                const __int128 r = static_cast<__int128>(threshold.den) * game.edge(mv.edge).weights[dim] - threshold.num;
                if (dist[v] + r > dist[mv.target]) {
                    dist[mv.target] = dist[v] + r;
                    parent[mv.target] = v;
                    relaxed_last = mv.target;
                }
            }
        if (relaxed_last == npos) break;
    }
    if (relaxed_last != npos) out.witness = anchor_cycle(p, extract_cycle(parent, relaxed_last, n));
    return out;
}

RecurrenceCheck check_recurrence(const ProductGraph& p, const GameStructure& game)
{
    const ObjectiveSpec& spec = game.objectives();
    RecurrenceCheck out;
    out.buchi = !spec.use_parity;
    const std::size_t n = p.size();

    if (out.buchi) {
        std::vector<char> accepting(game.state_count(), 0);
        for (StateIndex s : spec.buchi_targets) accepting[s] = 1;
        std::vector<char> allowed(n, 0);
        for (std::size_t v = 0; v < n; ++v) allowed[v] = !accepting[p.nodes[v].state];
        const Components comps = strongly_connected(p, allowed);
        std::vector<char> candidate(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            candidate[v] = allowed[v] && comps.cyclic[comps.component[v]];
        out.witness = closest_lasso(p, comps, candidate);
        out.pass = !out.witness.has_value();
        return out;
    }

    std::vector<std::uint32_t> odd;
    for (const auto& node : p.nodes)
        if (game.state(node.state).priority % 2 == 1) odd.push_back(game.state(node.state).priority);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    for (std::uint32_t d : odd) {
        std::vector<char> allowed(n, 0);
        for (std::size_t v = 0; v < n; ++v) allowed[v] = game.state(p.nodes[v].state).priority >= d;
        const Components comps = strongly_connected(p, allowed);
        std::vector<char> candidate(n, 0);
        for (std::size_t v = 0; v < n; ++v)
            candidate[v] = allowed[v] && game.state(p.nodes[v].state).priority == d && comps.cyclic[comps.component[v]];
        if (auto lasso = closest_lasso(p, comps, candidate)) {
            out.pass = false;
            out.odd_priority = d;
            out.witness = std::move(lasso);
            return out;
        }
    }
    return out;
}

VerificationReport verify_all(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit)
{
    const ProductGraph p = build_product(game, strategy, credit);
    const ObjectiveSpec& spec = game.objectives();

    VerificationReport r;
    r.game = game.name();
    r.strategy = strategy.name;
    r.credit = credit;
    r.product_nodes = p.size();
    for (const auto& moves : p.moves) r.product_moves += moves.size();
    r.node_labels = p.labels;
    if (strategy.game != game.name())
        r.warnings.push_back("strategy is declared for game '" + strategy.game + "', checking against '" + game.name() +
                             "'");
    if (p.unreachable_unspecified)
        r.warnings.push_back(std::to_string(p.unreachable_unspecified) +
                             " (memory, state) pairs have no move; none of them is reachable");

    for (std::size_t i = 0; i < spec.energy_dims.size(); ++i) {
        r.energy.push_back(check_energy(p, game, spec.energy_dims[i], credit[i]));
        r.pass = r.pass && r.energy.back().pass;
    }
    for (const auto& mp : spec.mean_payoff) {
        r.mean_payoff.push_back(check_mean_payoff(p, game, mp.dim, mp.threshold));
        r.pass = r.pass && r.mean_payoff.back().pass;
    }
    if (spec.has_recurrence()) {
        r.recurrence = check_recurrence(p, game);
        r.pass = r.pass && r.recurrence->pass;
    }
    return r;
}

} // namespace gamesmith
