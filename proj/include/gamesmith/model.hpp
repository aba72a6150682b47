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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "gamesmith/errors.hpp"

namespace gamesmith {

using Weight = std::int64_t;
using StateIndex = std::size_t;
using EdgeIndex = std::size_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

enum class Player : std::uint8_t { System = 1, Environment = 2 };

inline Player opponent(Player p)
{
    return p == Player::System ? Player::Environment : Player::System;
}

/// Exact rational with positive denominator. Values built through
/// Rational::reduced are in lowest terms; thresholds keep the p/q the user
/// wrote so they serialize back unchanged.
struct Rational
{
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational reduced(std::int64_t num, std::int64_t den);

    Rational normalized() const { return reduced(num, den); }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

std::string to_string(const Rational& r);

/// Non-negative amounts, one per tracked energy dimension.
class CreditVector
{
public:
    CreditVector() = default;
    explicit CreditVector(std::size_t dims, std::int64_t fill = 0) : v_(dims, fill) {}
    CreditVector(std::initializer_list<std::int64_t> values) : v_(values) {}
    explicit CreditVector(std::vector<std::int64_t> values) : v_(std::move(values)) {}

    std::size_t size() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    std::int64_t operator[](std::size_t i) const { return v_[i]; }
    std::int64_t& operator[](std::size_t i) { return v_[i]; }
    std::span<const std::int64_t> values() const noexcept { return v_; }
    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }

    /// Component-wise `*this <= other`.
    bool below(const CreditVector& other) const;
    bool is_zero() const;

    friend bool operator==(const CreditVector&, const CreditVector&) = default;
    friend auto operator<=>(const CreditVector&, const CreditVector&) = default;

private:
    std::vector<std::int64_t> v_;
};

/// Renders "(a,b,c)".
std::string to_string(const CreditVector& c);

struct State
{
    std::string id;
    Player owner = Player::System;
    std::uint32_t priority = 0;
    std::optional<SourceSpan> span;

    friend bool operator==(const State& a, const State& b)
    {
        return a.id == b.id && a.owner == b.owner && a.priority == b.priority;
    }
};

struct Edge
{
    StateIndex src = 0;
    StateIndex dst = 0;
    std::vector<Weight> weights;
    std::string label;
    std::optional<SourceSpan> span;

    friend bool operator==(const Edge& a, const Edge& b)
    {
        return a.src == b.src && a.dst == b.dst && a.weights == b.weights && a.label == b.label;
    }
};

struct MeanPayoffConstraint
{
    /// 0-based dimension index.
    std::size_t dim = 0;
    /// Upper bound p/q on the long-run mean (non-strict).
    Rational threshold;

    friend bool operator==(const MeanPayoffConstraint& a, const MeanPayoffConstraint& b)
    {
        return a.dim == b.dim && a.threshold.num == b.threshold.num && a.threshold.den == b.threshold.den;
    }
};

struct ObjectiveSpec
{
    /// 0-based, sorted ascending.
    std::vector<std::size_t> energy_dims;
    /// Sorted by dimension.
    std::vector<MeanPayoffConstraint> mean_payoff;
    /// State indices, sorted ascending.
    std::vector<StateIndex> buchi_targets;
    bool use_parity = false;

    bool has_recurrence() const { return use_parity || !buchi_targets.empty(); }
    bool is_energy_dim(std::size_t dim) const;
    const MeanPayoffConstraint* mean_payoff_on(std::size_t dim) const;

    friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;
};

/// A validated two-player game graph with k-dimensional integer weights.
///
/// Edges are kept sorted by (src, dst) declaration indices, so out-edges of a
/// state form a contiguous range. Instances are only produced by
/// validate_game and are immutable afterwards.
class GameStructure
{
public:
    const std::string& name() const noexcept { return name_; }
    std::size_t dimensions() const noexcept { return dimensions_; }
    /// Optional names, either empty or one per dimension.
    const std::vector<std::string>& dimension_names() const noexcept { return dimension_names_; }
    /// Declared name, or "dim<i+1>".
    std::string dimension_name(std::size_t dim) const;

    const std::vector<State>& states() const noexcept { return states_; }
    const State& state(StateIndex s) const { return states_[s]; }
    std::size_t state_count() const noexcept { return states_.size(); }
    StateIndex initial() const noexcept { return initial_; }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    /// Indices [first, last) of the out-edges of s.
    std::pair<EdgeIndex, EdgeIndex> out_range(StateIndex s) const { return {out_begin_[s], out_begin_[s + 1]}; }
    std::span<const Edge> out_edges(StateIndex s) const;

    const ObjectiveSpec& objectives() const noexcept { return objectives_; }

    std::optional<StateIndex> find_state(std::string_view id) const;
    std::optional<EdgeIndex> find_edge(StateIndex src, StateIndex dst) const;

    friend bool operator==(const GameStructure& a, const GameStructure& b);

private:
    friend GameStructure validate_game(const struct RawGame& raw);
    friend struct TransformedGame mp_transform(const GameStructure& game);

    static GameStructure build(const RawGame& raw, bool bounded_weights);

    std::string name_;
    std::size_t dimensions_ = 0;
    std::vector<std::string> dimension_names_;
    std::vector<State> states_;
    StateIndex initial_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_begin_;
    ObjectiveSpec objectives_;
    std::map<std::string, StateIndex, std::less<>> index_;
};

/// Unvalidated game description, referring to states by name. Produced by
/// the parser or by code building games programmatically.
struct RawGame
{
    struct RawState
    {
        std::string id;
        int owner = 1;
        std::uint32_t priority = 0;
        bool initial = false;
        std::optional<SourceSpan> span;
    };
    struct RawEdge
    {
        std::string src;
        std::string dst;
        std::vector<Weight> weights;
        std::string label;
        std::optional<SourceSpan> span;
    };
    struct RawObjective
    {
        enum class Kind { Energy, MeanPayoff, Buchi, Parity } kind = Kind::Energy;
        std::size_t dim = 0; ///< 1-based, as written
        Rational threshold;
        std::vector<std::string> states;
        std::optional<SourceSpan> span;
    };

    std::string name;
    std::optional<SourceSpan> name_span;
    std::size_t dimensions = 0;
    std::vector<std::string> dimension_names;
    std::optional<SourceSpan> dimensions_span;
    std::vector<RawState> states;
    std::vector<RawEdge> edges;
    std::vector<RawObjective> objectives;
};

/// Checks every structural invariant and builds the immutable game.
/// Throws GameError (with the span of the offending entity when known).
GameStructure validate_game(const RawGame& raw);

/// Inverse of validate_game, used for serialization and for derived games.
RawGame to_raw(const GameStructure& game);

/// c' = min(cap, c + w) component-wise. Throws EnergyUnderflow naming the
/// first dimension that would become negative.
CreditVector apply_edge(const CreditVector& credit, std::span<const Weight> weights,
                        std::optional<std::int64_t> cap = std::nullopt);

/// Non-throwing variant of apply_edge.
std::optional<CreditVector> try_apply_edge(const CreditVector& credit, std::span<const Weight> weights,
                                           std::optional<std::int64_t> cap = std::nullopt);

/// One mean-payoff constraint turned into an energy dimension.
struct MeanPayoffReduction
{
    std::size_t dim = 0;
    Rational threshold;

    friend bool operator==(const MeanPayoffReduction&, const MeanPayoffReduction&) = default;
};

struct TransformReport
{
    std::vector<MeanPayoffReduction> reductions;

    bool is_derived(std::size_t dim) const;
};

struct TransformedGame
{
    GameStructure game;
    TransformReport report;
};

/// Rewrites each mean-payoff dimension j with threshold p/q into an energy
/// dimension with weights p - q * w_j. The rewritten game has no mean-payoff
/// constraints left; its energy_dims cover both kinds.
TransformedGame mp_transform(const GameStructure& game);

/// Largest |w| over the energy dimensions of the game.
Weight max_abs_weight(const GameStructure& game);

/// Weights of edge e restricted to the given dimensions.
std::vector<Weight> project_weights(const Edge& e, std::span<const std::size_t> dims);

/// Priorities used by the solvers: Büchi targets get 0 and every other state
/// 1; with use_parity the declared priorities are used; without recurrence
/// objectives every state gets 0. Player 1 wins when the least priority seen
/// infinitely often is even.
std::vector<std::uint32_t> effective_priorities(const GameStructure& game);

/// Returns a copy with only the given objectives replaced (validated again).
GameStructure with_objectives(const GameStructure& game, const ObjectiveSpec& spec);

/// Moore controller over named states and memories.
///
/// Moves are keyed by (memory, player-1 state) and updates by
/// (memory, src, dst). Totality is only required on what the product with
/// the game reaches.
struct StrategyDoc
{
    std::string name;
    std::string game;
    std::vector<std::string> memories;
    std::size_t initial_memory = 0;
    std::map<std::pair<std::string, std::string>, std::string> moves;
    std::map<std::tuple<std::string, std::string, std::string>, std::string> updates;

    std::optional<std::size_t> find_memory(std::string_view id) const;

    friend bool operator==(const StrategyDoc&, const StrategyDoc&) = default;
};

using MooreStrategy = StrategyDoc;

} // namespace gamesmith
