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
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gamesmith/model.hpp"
#include "gamesmith/verify.hpp"

namespace gamesmith {

struct SessionOptions
{
    /// Let the controller play its states right after each step.
    bool auto_advance = true;
    /// Consecutive controller moves before auto-advance pauses.
    std::size_t step_budget = 1000;
    /// Number of undoable steps.
    std::size_t history_depth = 256;
    /// Number of trace entries kept.
    std::size_t trace_limit = 256;
};

struct TraceEntry
{
    std::size_t index = 0; ///< 0-based position of the edge in the play
    StateIndex src = 0;
    StateIndex dst = 0;
    EdgeIndex edge = 0;
    Player mover = Player::System;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// A finite prefix of a play, with the controller's memory and the
/// quantities the objectives talk about.
///
/// Sessions are values: copying one forks the play. The game and strategy
/// are shared immutable data.
class Session
{
public:
    /// `strategy` may be null, in which case every move is supplied by the
    /// caller. Throws SessionError(BadCredit) or ProductError (strategy
    /// naming unknown states).
    Session(std::shared_ptr<const GameStructure> game, std::shared_ptr<const StrategyDoc> strategy,
            CreditVector credit, SessionOptions options = {});

    const GameStructure& game() const { return *game_; }
    bool has_controller() const { return compiled_ != nullptr; }
    const StrategyDoc* strategy() const { return strategy_.get(); }
    const SessionOptions& options() const { return options_; }

    StateIndex state() const { return core_.state; }
    Player to_move() const { return game_->state(core_.state).owner; }
    /// True when the caller has to supply the next destination.
    bool awaiting_input() const { return to_move() == Player::Environment || !has_controller(); }
    const std::string& memory() const;
    std::size_t memory_index() const { return core_.memory; }

    const CreditVector& initial_credit() const { return initial_credit_; }
    /// Initial credit plus running sum on each energy dimension; may go
    /// negative once violated.
    const std::vector<std::int64_t>& credits() const { return core_.credits; }
    /// Running sum per dimension (all dimensions).
    const std::vector<std::int64_t>& sums() const { return core_.sums; }
    std::size_t edge_count() const { return core_.edges; }
    std::optional<Rational> running_mean(std::size_t dim) const;
    std::size_t buchi_visits() const { return core_.buchi_visits; }
    /// Edges since the last visit to a Büchi target (or since the start).
    std::size_t since_last_visit() const { return core_.since_visit; }
    bool energy_violated() const { return core_.violated_dim.has_value(); }
    /// First energy dimension (game index) that went negative.
    std::optional<std::size_t> violated_dim() const { return core_.violated_dim; }
    /// Auto-advance stopped at the step budget.
    bool paused() const { return core_.paused; }
    std::optional<EdgeIndex> last_controller_edge() const { return core_.last_controller_edge; }

    const std::deque<TraceEntry>& trace() const { return trace_; }
    std::size_t undo_depth() const { return history_.size(); }

    /// Successor state ids the caller may pick now (empty when it is the
    /// controller's turn).
    std::vector<std::string> legal_destinations() const;

    /// Caller move to `dst` from the current state, then auto-advance.
    /// Throws SessionError(WrongTurn) at a controller state and
    /// SessionError(IllegalMove) when there is no such edge.
    void step(const std::string& dst);
    void step_to(StateIndex dst);
    /// One controller move. Throws SessionError(WrongTurn) at an
    /// environment state and SessionError(NoController) without strategy or
    /// when the strategy has no move here.
    void controller_step();
    /// Controller moves until an environment state or the step budget.
    void advance();
    /// Reverts the last step() or controller_step(), including the
    /// auto-advance that followed it.
    void undo();

private:
    struct Core
    {
        StateIndex state = 0;
        std::size_t memory = 0;
        std::vector<std::int64_t> credits;
        std::vector<std::int64_t> sums;
        std::size_t edges = 0;
        std::size_t buchi_visits = 0;
        std::size_t since_visit = 0;
        std::optional<std::size_t> violated_dim;
        bool paused = false;
        std::optional<EdgeIndex> last_controller_edge;
    };
    struct HistoryItem
    {
        Core before;
        std::size_t traced = 0;
    };

    void take(EdgeIndex e, Player mover);
    void begin_step();
    void advance_unchecked();

    std::shared_ptr<const GameStructure> game_;
    std::shared_ptr<const StrategyDoc> strategy_;
    std::shared_ptr<const CompiledStrategy> compiled_;
    std::vector<char> accepting_;
    SessionOptions options_;
    CreditVector initial_credit_;
    Core core_;
    std::deque<TraceEntry> trace_;
    std::deque<HistoryItem> history_;
};

/// Chooses environment moves.
class Adversary
{
public:
    virtual ~Adversary() = default;
    /// Destination for the current (environment) state of the session.
    virtual StateIndex choose(const Session& session) = 0;
};

/// Uniform over the legal destinations; a pure function of the seed and of
/// the session's position, so the same situation yields the same choice.
class RandomAdversary : public Adversary
{
public:
    explicit RandomAdversary(std::uint64_t seed) : seed_(seed) {}
    StateIndex choose(const Session& session) override;

private:
    std::uint64_t seed_;
};

/// Plays a fixed list of destination ids. Throws SessionError
/// (ScriptExhausted, ScriptIllegal).
class ScriptAdversary : public Adversary
{
public:
    explicit ScriptAdversary(std::vector<std::string> script) : script_(std::move(script)) {}
    StateIndex choose(const Session& session) override;
    std::size_t position() const { return next_; }

private:
    std::vector<std::string> script_;
    std::size_t next_ = 0;
};

/// Steers the play along the first counterexample found by verify_all;
/// random elsewhere, and everywhere when the strategy verifies.
class SpoilerAdversary : public Adversary
{
public:
    SpoilerAdversary(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit,
                     std::uint64_t seed);
    StateIndex choose(const Session& session) override;

    bool has_counterexample() const { return !path_.empty(); }

private:
    /// Product nodes of the witness: stem then cycle.
    std::vector<ProductNode> path_;
    std::size_t cycle_start_ = 0;
    bool has_cycle_ = false;
    RandomAdversary fallback_;
};

} // namespace gamesmith
