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

#include <cstdint>
#include <span>
#include <vector>

#include "gamesmith/model.hpp"

namespace gamesmith {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = static_cast<NodeIndex>(-1);

/// Finite game graph on which the parity solver runs.
///
/// Built either from a game unfolded with clamped credits (expand_capped),
/// or directly from an explicit graph. Moves are stored in CSR form in the
/// order of the game's edges, so "first move" means the lowest (src, dst).
class Arena
{
public:
    /// Explicit arena; successors[v] may not be empty.
    static Arena from_graph(std::vector<Player> owners, std::vector<std::uint32_t> priorities,
                            const std::vector<std::vector<NodeIndex>>& successors);

    std::size_t node_count() const noexcept { return owner_.size(); }
    Player owner(NodeIndex v) const { return owner_[v]; }
    std::uint32_t priority(NodeIndex v) const { return priority_[v]; }

    std::span<const NodeIndex> successors(NodeIndex v) const
    {
        return std::span<const NodeIndex>(succ_).subspan(succ_begin_[v], succ_begin_[v + 1] - succ_begin_[v]);
    }
    std::span<const NodeIndex> predecessors(NodeIndex v) const
    {
        return std::span<const NodeIndex>(pred_).subspan(pred_begin_[v], pred_begin_[v + 1] - pred_begin_[v]);
    }
    /// Game edge behind the i-th move of v, npos for moves into the sink.
    EdgeIndex move_edge(NodeIndex v, std::size_t i) const { return succ_edge_[succ_begin_[v] + i]; }

    // Unfolding metadata; meaningful for arenas built by expand_capped.
    bool is_unfolding() const noexcept { return unfolding_; }
    std::int64_t cap() const noexcept { return cap_; }
    std::size_t tracked_dims() const noexcept { return dims_; }
    NodeIndex sink() const noexcept { return sink_; }
    NodeIndex node_of(StateIndex s, const CreditVector& credit) const;
    StateIndex state_of(NodeIndex v) const;
    CreditVector credit_of(NodeIndex v) const;

private:
    friend Arena expand_capped(const GameStructure&, std::int64_t, std::size_t);
    void finish(std::vector<std::vector<std::pair<NodeIndex, EdgeIndex>>>&& moves);

    std::vector<Player> owner_;
    std::vector<std::uint32_t> priority_;
    std::vector<std::size_t> succ_begin_;
    std::vector<NodeIndex> succ_;
    std::vector<EdgeIndex> succ_edge_;
    std::vector<std::size_t> pred_begin_;
    std::vector<NodeIndex> pred_;

    bool unfolding_ = false;
    std::int64_t cap_ = 0;
    std::size_t dims_ = 0;
    std::size_t states_ = 0;
    std::size_t block_ = 1; ///< (cap + 1)^dims
    NodeIndex sink_ = kNoNode;
};

/// Default node limit of expand_capped.
inline constexpr std::size_t kDefaultMaxArenaNodes = 4'000'000;

/// Number of nodes expand_capped would allocate, saturating at SIZE_MAX.
std::size_t capped_arena_size(std::size_t states, std::size_t dims, std::int64_t cap);

/// Unfolds `game` over credit vectors on its energy dimensions, clamped to
/// [0, cap]. Nodes are (state, credit) plus a losing sink owned by player 1
/// with priority 1. Underflowing player-1 edges are dropped (a node left
/// without moves goes to the sink); underflowing player-2 edges lead to the
/// sink. Priorities come from effective_priorities. Throws ArenaTooLarge.
Arena expand_capped(const GameStructure& game, std::int64_t cap, std::size_t max_nodes = kDefaultMaxArenaNodes);

struct Attractor
{
    std::vector<char> members;
    /// For player-owned members outside the targets: the successor used to
    /// get closer to the targets (kNoNode otherwise).
    std::vector<NodeIndex> witness;
};

/// Least set containing `targets` closed under: player nodes with a move
/// into the set, opponent nodes with all moves into the set. When `within`
/// is given the computation is restricted to that subgame.
Attractor attractor(const Arena& arena, Player player, std::span<const char> targets,
                    std::span<const char> within = {});

struct ParityResult
{
    /// Winner of each node.
    std::vector<Player> winner;
    /// Memoryless strategy: for a node owned by its winner, the successor to
    /// play; kNoNode elsewhere.
    std::vector<NodeIndex> strategy;

    bool system_wins(NodeIndex v) const { return winner[v] == Player::System; }
};

/// Zielonka's recursive algorithm, min-even convention: player 1 wins a
/// play when the least priority seen infinitely often is even.
ParityResult solve_parity(const Arena& arena);

} // namespace gamesmith
