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

#include <optional>
#include <string>
#include <vector>

#include "gamesmith/model.hpp"

namespace gamesmith {

/// Strategy resolved against a game: dense move and update tables.
struct CompiledStrategy
{
    std::size_t memory_count = 0;
    std::size_t initial_memory = 0;
    std::size_t state_count = 0;
    std::size_t edge_count = 0;
    std::vector<std::string> memory_names;
    /// move[m * state_count + s], npos when undefined.
    std::vector<StateIndex> move;
    /// update[m * edge_count + e], npos when undefined.
    std::vector<std::size_t> update;
    /// Moves naming a destination that is not a successor of the state;
    /// reported only when reached.
    std::vector<char> illegal_move;

    StateIndex move_at(std::size_t memory, StateIndex s) const { return move[memory * state_count + s]; }
    std::size_t update_at(std::size_t memory, EdgeIndex e) const { return update[memory * edge_count + e]; }
};

/// Resolves state names. Throws ProductError(UnknownState) when an entry
/// names a state the game does not have.
CompiledStrategy compile_strategy(const GameStructure& game, const StrategyDoc& strategy);

struct ProductNode
{
    StateIndex state = 0;
    std::size_t memory = 0;
};

struct ProductMove
{
    std::size_t target = 0;
    EdgeIndex edge = 0;
};

/// Strategy x game, restricted to what is reachable from
/// (initial state, initial memory). Player-1 nodes have exactly one move.
struct ProductGraph
{
    std::vector<ProductNode> nodes;
    std::vector<std::vector<ProductMove>> moves;
    /// Initial credit on the game's energy dimensions.
    CreditVector initial_credit;
    /// Player-1 (memory, state) pairs without a move that were not reached.
    std::size_t unreachable_unspecified = 0;
    std::vector<std::string> labels;

    std::size_t size() const { return nodes.size(); }
    const std::string& label(std::size_t v) const { return labels[v]; }
};

/// BFS from node 0. Throws ProductError (UndefinedMove, UndefinedUpdate,
/// IllegalStrategyMove, BadCredit) with the reachable path to the problem.
ProductGraph build_product(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit);
ProductGraph build_product(const GameStructure& game, const CompiledStrategy& strategy, const CreditVector& credit);

/// Finite prefix followed by a cycle, as product node indices. `stem` runs
/// from the initial node up to (excluding) the first cycle node; joining
/// the last cycle node back to the first closes the loop. Energy witnesses
/// for a finite violation have an empty cycle and end on the node reached
/// by the violating edge.
struct Lasso
{
    std::vector<std::size_t> stem;
    std::vector<std::size_t> cycle;

    friend bool operator==(const Lasso&, const Lasso&) = default;
};

struct EnergyCheck
{
    std::size_t dim = 0;
    std::int64_t credit = 0;
    bool pass = true;
    /// Minimum running sum over reachable prefixes (including the empty
    /// one); nullopt when a reachable cycle is negative.
    std::optional<std::int64_t> min_prefix_sum;
    /// On failure, the shortest prefix along which the credit runs out, or
    /// a lasso around a negative cycle when no short prefix does.
    std::optional<Lasso> witness;
};

EnergyCheck check_energy(const ProductGraph& product, const GameStructure& game, std::size_t dim,
                         std::int64_t credit);

struct MeanPayoffCheck
{
    std::size_t dim = 0;
    Rational threshold;
    bool pass = true;
    /// Largest mean weight over reachable cycles, in lowest terms.
    Rational max_cycle_mean;
    std::optional<Lasso> witness;
};

/// Karp's algorithm on each reachable strongly connected component, using
/// the game's original weights.
MeanPayoffCheck check_mean_payoff(const ProductGraph& product, const GameStructure& game, std::size_t dim,
                                  Rational threshold);

/// Max cycle mean of dim over the cycles of the product.
Rational max_cycle_mean(const ProductGraph& product, const GameStructure& game, std::size_t dim);

struct RecurrenceCheck
{
    bool buchi = true;
    bool pass = true;
    /// Odd priority that is minimal on the witness cycle (parity only).
    std::optional<std::uint32_t> odd_priority;
    std::optional<Lasso> witness;
};

/// Büchi: no reachable cycle avoids the targets. Parity: no reachable cycle
/// has an odd minimal priority.
RecurrenceCheck check_recurrence(const ProductGraph& product, const GameStructure& game);

struct VerificationReport
{
    std::string game;
    std::string strategy;
    CreditVector credit;
    std::size_t product_nodes = 0;
    std::size_t product_moves = 0;
    std::vector<EnergyCheck> energy;
    std::vector<MeanPayoffCheck> mean_payoff;
    std::optional<RecurrenceCheck> recurrence;
    std::vector<std::string> warnings;
    /// Labels of the product nodes, indexed like the lasso entries.
    std::vector<std::string> node_labels;
    bool pass = true;
};

VerificationReport verify_all(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit);

} // namespace gamesmith
