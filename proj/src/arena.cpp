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

#include "gamesmith/arena.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace gamesmith {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b)
{
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    return a * b;
}

} // namespace

std::size_t capped_arena_size(std::size_t states, std::size_t dims, std::int64_t cap)
{
    std::size_t block = 1;
    for (std::size_t i = 0; i < dims; ++i) block = saturating_mul(block, static_cast<std::size_t>(cap) + 1);
    const std::size_t nodes = saturating_mul(states, block);
    return nodes == std::numeric_limits<std::size_t>::max() ? nodes : nodes + 1;
}

void Arena::finish(std::vector<std::vector<std::pair<NodeIndex, EdgeIndex>>>&& moves)
{
    const std::size_t n = moves.size();
    succ_begin_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) succ_begin_[v + 1] = succ_begin_[v] + moves[v].size();
    succ_.reserve(succ_begin_[n]);
    succ_edge_.reserve(succ_begin_[n]);
    for (auto& list : moves)
        for (auto [t, e] : list) {
            succ_.push_back(t);
            succ_edge_.push_back(e);
        }
    moves.clear();

    pred_begin_.assign(n + 1, 0);
    for (NodeIndex t : succ_) ++pred_begin_[t + 1];
    for (std::size_t v = 0; v < n; ++v) pred_begin_[v + 1] += pred_begin_[v];
    pred_.resize(succ_.size());
    std::vector<std::size_t> fill(pred_begin_.begin(), pred_begin_.end() - 1);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = succ_begin_[v]; i < succ_begin_[v + 1]; ++i) pred_[fill[succ_[i]]++] = static_cast<NodeIndex>(v);
}

Arena Arena::from_graph(std::vector<Player> owners, std::vector<std::uint32_t> priorities,
                        const std::vector<std::vector<NodeIndex>>& successors)
{
    if (owners.size() != priorities.size() || owners.size() != successors.size())
        throw Error("Arena::from_graph: inconsistent sizes");
    Arena a;
    a.owner_ = std::move(owners);
    a.priority_ = std::move(priorities);
    std::vector<std::vector<std::pair<NodeIndex, EdgeIndex>>> moves(successors.size());
    for (std::size_t v = 0; v < successors.size(); ++v) {
        if (successors[v].empty()) throw Error("Arena::from_graph: node " + std::to_string(v) + " has no successor");
        for (NodeIndex t : successors[v]) {
            if (t >= successors.size()) throw Error("Arena::from_graph: successor out of range");
            moves[v].emplace_back(t, npos);
        }
    }
    a.finish(std::move(moves));
    return a;
}

NodeIndex Arena::node_of(StateIndex s, const CreditVector& credit) const
{
    std::size_t code = 0;
    std::size_t scale = 1;
    for (std::size_t i = 0; i < dims_; ++i) {
        code += static_cast<std::size_t>(credit[i]) * scale;
        scale *= static_cast<std::size_t>(cap_) + 1;
    }
    return static_cast<NodeIndex>(s * block_ + code);
}

StateIndex Arena::state_of(NodeIndex v) const
{
    return v / block_;
}

CreditVector Arena::credit_of(NodeIndex v) const
{
    CreditVector c(dims_);
    std::size_t code = v % block_;
    for (std::size_t i = 0; i < dims_; ++i) {
        c[i] = static_cast<std::int64_t>(code % (static_cast<std::size_t>(cap_) + 1));
        code /= static_cast<std::size_t>(cap_) + 1;
    }
    return c;
}

Arena expand_capped(const GameStructure& game, std::int64_t cap, std::size_t max_nodes)
{
    if (cap < 0) throw Error("expand_capped: negative cap");
    const auto& dims = game.objectives().energy_dims;
    const std::size_t required = capped_arena_size(game.state_count(), dims.size(), cap);
    const std::size_t limit = std::min<std::size_t>(max_nodes, std::numeric_limits<NodeIndex>::max() - 1);
    if (required > limit) throw ArenaTooLarge(required, limit);

    Arena a;
    a.unfolding_ = true;
    a.cap_ = cap;
    a.dims_ = dims.size();
    a.states_ = game.state_count();
    a.block_ = (required - 1) / game.state_count();
    a.sink_ = static_cast<NodeIndex>(required - 1);

    const auto priorities = effective_priorities(game);
    a.owner_.resize(required);
    a.priority_.resize(required);

    std::vector<std::vector<Weight>> weights;
    for (const Edge& e : game.edges()) weights.push_back(project_weights(e, dims));

    const std::size_t base = static_cast<std::size_t>(cap) + 1;
    a.succ_begin_.assign(required + 1, 0);
    std::vector<std::int64_t> credit(dims.size());
    for (StateIndex s = 0; s < game.state_count(); ++s) {
        const Player owner = game.state(s).owner;
        const auto [first, last] = game.out_range(s);
        std::fill(credit.begin(), credit.end(), 0);
        for (std::size_t code = 0; code < a.block_; ++code) {
            const auto v = static_cast<NodeIndex>(s * a.block_ + code);
            a.owner_[v] = owner;
            a.priority_[v] = priorities[s];
            bool to_sink = false;
            for (EdgeIndex e = first; e < last; ++e) {
                std::size_t target = 0;
                std::size_t scale = 1;
                bool underflow = false;
                for (std::size_t i = 0; i < credit.size(); ++i) {
                    std::int64_t next = credit[i] + weights[e][i];
                    if (next < 0) {
                        underflow = true;
                        break;
                    }
                    if (next > cap) next = cap;
                    target += static_cast<std::size_t>(next) * scale;
                    scale *= base;
                }
                if (underflow) {
                    if (owner == Player::Environment && !to_sink) {
                        to_sink = true;
                        a.succ_.push_back(a.sink_);
                        a.succ_edge_.push_back(e);
                    }
                    continue;
                }
                a.succ_.push_back(static_cast<NodeIndex>(game.edge(e).dst * a.block_ + target));
                a.succ_edge_.push_back(e);
            }
            if (a.succ_.size() == a.succ_begin_[v]) {
                a.succ_.push_back(a.sink_);
                a.succ_edge_.push_back(npos);
            }
            a.succ_begin_[v + 1] = a.succ_.size();
            // Next credit vector in little-endian mixed radix order.
            for (std::size_t i = 0; i < credit.size(); ++i) {
                if (++credit[i] <= cap) break;
                credit[i] = 0;
            }
        }
    }
    a.owner_[a.sink_] = Player::System;
    a.priority_[a.sink_] = 1;
    a.succ_.push_back(a.sink_);
    a.succ_edge_.push_back(npos);
    a.succ_begin_[a.sink_ + 1] = a.succ_.size();

    const std::size_t n = required;
    a.pred_begin_.assign(n + 1, 0);
    for (NodeIndex t : a.succ_) ++a.pred_begin_[t + 1];
    for (std::size_t v = 0; v < n; ++v) a.pred_begin_[v + 1] += a.pred_begin_[v];
    a.pred_.resize(a.succ_.size());
    std::vector<std::size_t> fill(a.pred_begin_.begin(), a.pred_begin_.end() - 1);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = a.succ_begin_[v]; i < a.succ_begin_[v + 1]; ++i)
            a.pred_[fill[a.succ_[i]]++] = static_cast<NodeIndex>(v);
    return a;
}

Attractor attractor(const Arena& arena, Player player, std::span<const char> targets, std::span<const char> within)
{
    const std::size_t n = arena.node_count();
    auto inside = [&](NodeIndex v) { return within.empty() || within[v]; };

    Attractor out;
    out.members.assign(n, 0);
    out.witness.assign(n, kNoNode);
    std::vector<std::uint32_t> rank(n, 0);
    std::vector<std::int32_t> remaining(n, -1);
    std::deque<NodeIndex> queue;
    for (NodeIndex v = 0; v < n; ++v)
        if (targets[v] && inside(v)) {
            out.members[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex p : arena.predecessors(u)) {
            if (!inside(p) || out.members[p]) continue;
            if (arena.owner(p) != player) {
                if (remaining[p] < 0) {
                    std::int32_t count = 0;
                    for (NodeIndex t : arena.successors(p)) count += inside(t) ? 1 : 0;
                    remaining[p] = count;
                }
                if (--remaining[p] > 0) continue;
            }
            out.members[p] = 1;
            rank[p] = rank[u] + 1;
            queue.push_back(p);
        }
    }
    // Witness: first move (lowest edge) that strictly decreases the rank.
    for (NodeIndex v = 0; v < n; ++v) {
        if (!out.members[v] || targets[v] || arena.owner(v) != player) continue;
        for (NodeIndex t : arena.successors(v))
            if (inside(t) && out.members[t] && rank[t] < rank[v]) {
                out.witness[v] = t;
                break;
            }
    }
    return out;
}

namespace {

void zielonka(const Arena& arena, std::vector<char> mask, ParityResult& r)
{
    const std::size_t n = arena.node_count();
    while (true) {
        std::uint32_t d = std::numeric_limits<std::uint32_t>::max();
        for (NodeIndex v = 0; v < n; ++v)
            if (mask[v]) d = std::min(d, arena.priority(v));
        if (d == std::numeric_limits<std::uint32_t>::max()) return;

        const Player alpha = d % 2 == 0 ? Player::System : Player::Environment;
        const Player beta = opponent(alpha);

        std::vector<char> targets(n, 0);
        for (NodeIndex v = 0; v < n; ++v) targets[v] = mask[v] && arena.priority(v) == d;
        const Attractor a = attractor(arena, alpha, targets, mask);

        std::vector<char> sub(n, 0);
        bool sub_empty = true;
        for (NodeIndex v = 0; v < n; ++v) {
            sub[v] = mask[v] && !a.members[v];
            sub_empty = sub_empty && !sub[v];
        }
        if (!sub_empty) zielonka(arena, sub, r);

        std::vector<char> beta_region(n, 0);
        bool beta_empty = true;
        for (NodeIndex v = 0; v < n; ++v)
            if (sub[v] && r.winner[v] == beta) {
                beta_region[v] = 1;
                beta_empty = false;
            }

        if (beta_empty) {
            for (NodeIndex v = 0; v < n; ++v) {
                if (!mask[v]) continue;
                r.winner[v] = alpha;
                if (arena.owner(v) != alpha) {
                    r.strategy[v] = kNoNode;
                } else if (targets[v]) {
                    r.strategy[v] = kNoNode;
                    for (NodeIndex t : arena.successors(v))
                        if (mask[t]) {
                            r.strategy[v] = t;
                            break;
                        }
                } else if (a.members[v]) {
                    r.strategy[v] = a.witness[v];
                }
            }
            return;
        }

        const Attractor b = attractor(arena, beta, beta_region, mask);
        for (NodeIndex v = 0; v < n; ++v) {
            if (!b.members[v]) continue;
            r.winner[v] = beta;
            if (arena.owner(v) != beta)
                r.strategy[v] = kNoNode;
            else if (!beta_region[v])
                r.strategy[v] = b.witness[v];
            mask[v] = 0;
        }
    }
}

} // namespace

ParityResult solve_parity(const Arena& arena)
{
    ParityResult r;
    r.winner.assign(arena.node_count(), Player::System);
    r.strategy.assign(arena.node_count(), kNoNode);
    zielonka(arena, std::vector<char>(arena.node_count(), 1), r);
    return r;
}

} // namespace gamesmith
