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

#include "gamesmith/antichain.hpp"
#include "gamesmith/arena.hpp"
#include "gamesmith/model.hpp"

namespace gamesmith {

enum class SynthesisStatus { Winning, Losing, Unknown };

/// "WINNING", "LOSING", "UNKNOWN".
const char* to_string(SynthesisStatus status);

enum class Engine { Auto, Capped, Antichain };

/// "auto", "capped", "antichain".
const char* to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view text);

inline constexpr std::int64_t kDefaultMaxCap = 4096;

struct SynthesisConfig
{
    Engine engine = Engine::Auto;
    /// First cap of the schedule; max(1, W) when unset.
    std::optional<std::int64_t> initial_cap;
    std::int64_t max_cap = kDefaultMaxCap;
    /// Ceiling of the energy fixpoint (pre-check and antichain engine);
    /// (|S| - 1) * W when unset.
    std::optional<std::int64_t> ceiling;
    std::size_t max_arena_nodes = kDefaultMaxArenaNodes;
    /// Keep doubling after the first winning cap while the credits improve.
    bool refine = true;
    /// Run verify_all on the extracted strategy; a failure throws
    /// InternalError.
    bool self_verify = true;
};

struct CapAttempt
{
    std::int64_t cap = 0;
    std::size_t nodes = 0;
    enum class Outcome { Winning, NotWinning, TooLarge } outcome = Outcome::NotWinning;
    double millis = 0;
};

const char* to_string(CapAttempt::Outcome outcome);

struct SynthesisResult
{
    SynthesisStatus status = SynthesisStatus::Unknown;
    Engine engine_used = Engine::Capped;
    TransformReport transform;
    /// Minimal initial credits on the true energy dimensions.
    CreditAntichain credits;
    /// Lexicographically least element of `credits`, used for the strategy.
    std::optional<CreditVector> chosen_credit;
    /// Initial offset on each mp-derived dimension that goes with
    /// chosen_credit, in the order of transform.reductions.
    CreditVector slack;
    std::optional<StrategyDoc> strategy;
    /// Cap of the arena the strategy comes from, or the last cap tried.
    std::optional<std::int64_t> last_cap;
    std::vector<CapAttempt> attempts;
    /// Why LOSING was concluded, or why a step was skipped.
    std::vector<std::string> notes;
    std::optional<FixpointStatus> fixpoint_status;
    double total_millis = 0;
};

/// Moore strategy read off a solved capped arena, starting at node
/// (initial state, start). Memories are the clamped credit vectors reached,
/// named "m<c1>_<c2>..." in discovery order.
StrategyDoc extract_strategy(const GameStructure& game, const Arena& arena, const ParityResult& solution,
                             const CreditVector& start, const std::string& name);

/// Decides whether player 1 wins `game` (with the objectives the game
/// declares) from its initial state.
SynthesisResult synthesize(const GameStructure& game, const SynthesisConfig& config = {});

/// Same with the objectives replaced by `spec`.
SynthesisResult synthesize(const GameStructure& game, const ObjectiveSpec& spec, const SynthesisConfig& config = {});

} // namespace gamesmith
