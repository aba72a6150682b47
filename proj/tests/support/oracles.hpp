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

// Independent reference implementations used to cross-check the library.
// They favour obviousness over speed and only run on tiny inputs.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gamesmith/arena.hpp"
#include "gamesmith/model.hpp"
#include "gamesmith/verify.hpp"

namespace gamesmith::testing {

using Rng = std::mt19937_64;

struct RandomGameParams
{
    std::size_t min_states = 1;
    std::size_t max_states = 5;
    std::size_t dimensions = 1;
    Weight max_weight = 2;
    /// Probability that a state belongs to player 2.
    double environment_share = 0.5;
    std::size_t max_out_degree = 3;
    /// Declare every dimension as energy, except the ones listed here,
    /// which get a mean-payoff threshold.
    std::vector<std::size_t> mean_payoff_dims;
    /// Threshold numerator range [0, max_weight] over denominator 1..2.
    bool buchi = false;
    bool parity = false;
    std::uint32_t max_priority = 3;
};

/// Random non-blocking game named "g<seed>" with states s0..s(n-1), s0
/// initial.
GameStructure random_game(Rng& rng, const RandomGameParams& params);

/// Random total memoryless or small-memory strategy for `game`.
StrategyDoc random_strategy(Rng& rng, const GameStructure& game, std::size_t memories);

/// Minimal credits per state of the energy game whose levels are clamped to
/// [0, ceiling], computed on the explicit level graph by iterated removal of
/// losing positions.
std::vector<std::vector<CreditVector>> clamped_minimal_credits(const GameStructure& game, std::int64_t ceiling);

/// Winner at `start` by enumerating all memoryless strategies of both
/// players (min-even parity). Exponential; for a handful of nodes.
Player parity_winner_by_enumeration(const Arena& arena, NodeIndex start);

/// True when every play from `start` consistent with the player-1
/// memoryless strategy `sigma` (defined on player-1 nodes) has an even
/// minimal recurring priority, checked against all player-2 memoryless
/// strategies.
bool strategy_wins_by_enumeration(const Arena& arena, const std::vector<NodeIndex>& sigma, NodeIndex start);

struct SimpleCycle
{
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> moves; ///< index into product.moves[node]
};

/// All simple cycles of the product, each listed once (from its least node).
std::vector<SimpleCycle> simple_cycles(const ProductGraph& product);

/// Max over simple cycles of the mean of dim; nullopt without cycles.
std::optional<Rational> max_mean_by_cycles(const ProductGraph& product, const GameStructure& game, std::size_t dim);

/// Min running sum of dim over walks of length <= max_len from node 0
/// (empty walk included).
std::int64_t min_prefix_by_walks(const ProductGraph& product, const GameStructure& game, std::size_t dim,
                                 std::size_t max_len);

/// Whether some simple cycle with negative sum on dim exists (every product
/// node is reachable).
bool has_negative_cycle(const ProductGraph& product, const GameStructure& game, std::size_t dim);

/// Whether a lasso avoids the Büchi targets forever, i.e. some simple cycle
/// has no accepting node.
bool has_rejecting_cycle(const ProductGraph& product, const GameStructure& game);

} // namespace gamesmith::testing
