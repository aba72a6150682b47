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

#include "gamesmith/simulate.hpp"

#include <algorithm>

namespace gamesmith {

Session::Session(std::shared_ptr<const GameStructure> game, std::shared_ptr<const StrategyDoc> strategy,
                 CreditVector credit, SessionOptions options)
    : game_(std::move(game)), strategy_(std::move(strategy)), options_(options), initial_credit_(std::move(credit))
{
    const ObjectiveSpec& spec = game_->objectives();
    if (initial_credit_.size() != spec.energy_dims.size())
        throw SessionError(SessionErrorKind::BadCredit, "credit has " + std::to_string(initial_credit_.size()) +
                                                            " components, the game has " +
                                                            std::to_string(spec.energy_dims.size()) +
                                                            " energy dimensions");
    for (std::int64_t c : initial_credit_)
        if (c < 0) throw SessionError(SessionErrorKind::BadCredit, "credit components must be non-negative");
    if (strategy_) {
        compiled_ = std::make_shared<const CompiledStrategy>(compile_strategy(*game_, *strategy_));
        core_.memory = compiled_->initial_memory;
    }
    accepting_.assign(game_->state_count(), 0);
    for (StateIndex s : spec.buchi_targets) accepting_[s] = 1;

    core_.state = game_->initial();
    core_.credits.assign(initial_credit_.begin(), initial_credit_.end());
    core_.sums.assign(game_->dimensions(), 0);
    if (options_.auto_advance && has_controller()) advance_unchecked();
}

const std::string& Session::memory() const
{
    static const std::string none;
    return compiled_ ? compiled_->memory_names[core_.memory] : none;
}

std::optional<Rational> Session::running_mean(std::size_t dim) const
{
    if (core_.edges == 0) return std::nullopt;
    return Rational::reduced(core_.sums[dim], static_cast<std::int64_t>(core_.edges));
}

std::vector<std::string> Session::legal_destinations() const
{
    std::vector<std::string> out;
    if (!awaiting_input()) return out;
    for (const Edge& e : game_->out_edges(core_.state)) out.push_back(game_->state(e.dst).id);
    return out;
}

void Session::take(EdgeIndex e, Player mover)
{
    const Edge& edge = game_->edge(e);
    const auto& dims = game_->objectives().energy_dims;
    for (std::size_t d = 0; d < edge.weights.size(); ++d) core_.sums[d] += edge.weights[d];
    for (std::size_t i = 0; i < dims.size(); ++i) {
        core_.credits[i] += edge.weights[dims[i]];
        if (core_.credits[i] < 0 && !core_.violated_dim) core_.violated_dim = dims[i];
    }
    if (compiled_) {
        const std::size_t next = compiled_->update_at(core_.memory, e);
        if (next == npos)
            throw SessionError(SessionErrorKind::NoController,
                               "strategy has no update for memory " + memory() + " on " +
                                   game_->state(edge.src).id + " -> " + game_->state(edge.dst).id);
        core_.memory = next;
    }
    trace_.push_back({core_.edges, edge.src, edge.dst, e, mover});
    if (trace_.size() > options_.trace_limit) trace_.pop_front();
    if (!history_.empty()) ++history_.back().traced;
    ++core_.edges;
    core_.state = edge.dst;
    if (accepting_[edge.dst]) {
        ++core_.buchi_visits;
        core_.since_visit = 0;
    } else {
        ++core_.since_visit;
    }
    if (mover == Player::System) core_.last_controller_edge = e;
}

void Session::begin_step()
{
    history_.push_back({core_, 0});
    if (history_.size() > options_.history_depth) history_.pop_front();
}

void Session::step(const std::string& dst)
{
    auto target = game_->find_state(dst);
    if (!target)
        throw SessionError(SessionErrorKind::IllegalMove,
                           "no edge " + game_->state(core_.state).id + " -> " + dst);
    step_to(*target);
}

void Session::step_to(StateIndex dst)
{
    if (!awaiting_input())
        throw SessionError(SessionErrorKind::WrongTurn,
                           "state " + game_->state(core_.state).id + " is played by the controller");
    auto e = game_->find_edge(core_.state, dst);
    if (!e)
        throw SessionError(SessionErrorKind::IllegalMove, "no edge " + game_->state(core_.state).id + " -> " +
                                                              game_->state(dst).id);
    begin_step();
    try {
        core_.paused = false;
        take(*e, to_move());
        if (options_.auto_advance && has_controller()) advance_unchecked();
    } catch (...) {
        undo();
        throw;
    }
}

void Session::controller_step()
{
    if (!has_controller()) throw SessionError(SessionErrorKind::NoController, "session has no strategy");
    if (to_move() != Player::System)
        throw SessionError(SessionErrorKind::WrongTurn,
                           "state " + game_->state(core_.state).id + " is played by the environment");
    const StateIndex dst = compiled_->move_at(core_.memory, core_.state);
    if (dst == npos || compiled_->illegal_move[core_.memory * compiled_->state_count + core_.state])
        throw SessionError(SessionErrorKind::NoController,
                           "strategy has no legal move for memory " + memory() + " at " +
                               game_->state(core_.state).id);
    begin_step();
    core_.paused = false;
    take(*game_->find_edge(core_.state, dst), Player::System);
}

void Session::advance()
{
    if (!has_controller()) throw SessionError(SessionErrorKind::NoController, "session has no strategy");
    begin_step();
    core_.paused = false;
    advance_unchecked();
}

void Session::advance_unchecked()
{
    std::size_t moves = 0;
    while (to_move() == Player::System) {
        if (moves == options_.step_budget) {
            core_.paused = true;
            return;
        }
        const StateIndex dst = compiled_->move_at(core_.memory, core_.state);
        if (dst == npos || compiled_->illegal_move[core_.memory * compiled_->state_count + core_.state])
            throw SessionError(SessionErrorKind::NoController,
                               "strategy has no legal move for memory " + memory() + " at " +
                                   game_->state(core_.state).id);
        take(*game_->find_edge(core_.state, dst), Player::System);
        ++moves;
    }
}

void Session::undo()
{
    if (history_.empty()) throw SessionError(SessionErrorKind::NothingToUndo, "nothing to undo");
    HistoryItem item = std::move(history_.back());
    history_.pop_back();
    core_ = std::move(item.before);
    for (std::size_t i = 0; i < item.traced && !trace_.empty(); ++i) trace_.pop_back();
}

namespace {

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

StateIndex RandomAdversary::choose(const Session& session)
{
    const auto out = session.game().out_edges(session.state());
    std::uint64_t h = splitmix(seed_);
    h = splitmix(h ^ session.edge_count());
    h = splitmix(h ^ session.state());
    h = splitmix(h ^ session.memory_index());
    return out[h % out.size()].dst;
}

StateIndex ScriptAdversary::choose(const Session& session)
{
    if (next_ >= script_.size())
        throw SessionError(SessionErrorKind::ScriptExhausted,
                           "script has no move left after " + std::to_string(script_.size()) + " moves");
    const std::string& id = script_[next_];
    auto dst = session.game().find_state(id);
    if (!dst || !session.game().find_edge(session.state(), *dst))
        throw SessionError(SessionErrorKind::ScriptIllegal, "script move " + std::to_string(next_ + 1) + " (" + id +
                                                                ") is not an edge from " +
                                                                session.game().state(session.state()).id);
    ++next_;
    return *dst;
}

SpoilerAdversary::SpoilerAdversary(const GameStructure& game, const StrategyDoc& strategy, const CreditVector& credit,
                                   std::uint64_t seed)
    : fallback_(seed)
{
    const ProductGraph product = build_product(game, strategy, credit);
    const VerificationReport report = verify_all(game, strategy, credit);
    std::optional<Lasso> witness;
    for (const auto& e : report.energy)
        if (!witness && e.witness) witness = e.witness;
    for (const auto& m : report.mean_payoff)
        if (!witness && m.witness) witness = m.witness;
    if (!witness && report.recurrence && report.recurrence->witness) witness = report.recurrence->witness;
    if (!witness) return;
    for (std::size_t v : witness->stem) path_.push_back(product.nodes[v]);
    cycle_start_ = path_.size();
    for (std::size_t v : witness->cycle) path_.push_back(product.nodes[v]);
    has_cycle_ = !witness->cycle.empty();
}

StateIndex SpoilerAdversary::choose(const Session& session)
{
    auto at = [&](std::size_t i) {
        return path_[i].state == session.state() && path_[i].memory == session.memory_index();
    };
    auto successor = [&](std::size_t i) -> std::optional<StateIndex> {
        if (i + 1 < path_.size()) return path_[i + 1].state;
        if (has_cycle_) return path_[cycle_start_].state;
        return std::nullopt;
    };
    for (std::size_t i = cycle_start_; i < path_.size(); ++i)
        if (at(i)) return *successor(i);
    for (std::size_t i = 0; i < cycle_start_; ++i)
        if (at(i))
            if (auto next = successor(i)) return *next;
    return fallback_.choose(session);
}

} // namespace gamesmith
