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
#include <vector>

#include "gamesmith/model.hpp"

namespace gamesmith {

/// Upward-closed set of credit vectors, stored as its minimal elements in
/// lexicographic order. The empty antichain means no credit suffices.
class CreditAntichain
{
public:
    CreditAntichain() = default;
    /// Keeps the minimal elements of `vectors`.
    explicit CreditAntichain(std::vector<CreditVector> vectors);

    const std::vector<CreditVector>& elements() const noexcept { return elements_; }
    bool empty() const noexcept { return elements_.empty(); }
    std::size_t size() const noexcept { return elements_.size(); }
    /// True when some element is below c.
    bool covers(const CreditVector& c) const;

    friend bool operator==(const CreditAntichain&, const CreditAntichain&) = default;

private:
    std::vector<CreditVector> elements_;
};

/// Renders "{(0,0),(1,2)}".
std::string to_string(const CreditAntichain& a);

/// Vectors not dominated (component-wise >=) by another member, duplicates
/// collapsed, sorted lexicographically.
std::vector<CreditVector> min_elements(std::vector<CreditVector> vectors);

using StateAntichains = std::vector<CreditAntichain>;

struct CpreResult
{
    StateAntichains next;
    /// States where some candidate exceeded the ceiling and was dropped.
    std::vector<StateIndex> ceiling_exceeded;
};

/// One controllable-predecessor step over the energy dimensions of `game`.
/// Player-1 states take the union over edges of max(0, u - w); player-2
/// states take the component-wise max over one choice per edge.
CpreResult cpre(const GameStructure& game, const StateAntichains& current, std::int64_t ceiling);

enum class FixpointStatus { Exact, Ceiling };

struct EnergyFixpoint
{
    StateAntichains credits;
    FixpointStatus status = FixpointStatus::Exact;
    std::int64_t ceiling = 0;
    std::size_t iterations = 0;

    bool winning_at(StateIndex s) const { return !credits[s].empty(); }
};

/// (|S| - 1) * W with W the largest absolute energy weight.
std::int64_t default_ceiling(const GameStructure& game);

/// Least fixed point of cpre from {0} at every state. Candidates above the
/// ceiling are discarded, which makes the result the minimal credits of the
/// energy game whose levels are clamped at `ceiling`. Status is Exact when
/// nothing was discarded, or with a single energy dimension when the
/// ceiling reaches (|S| - 1) * W (no finite minimal credit exceeds it).
EnergyFixpoint energy_fixpoint(const GameStructure& game, std::optional<std::int64_t> ceiling = std::nullopt);

} // namespace gamesmith
