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

#include "gamesmith/antichain.hpp"

#include <algorithm>

namespace gamesmith {

std::vector<CreditVector> min_elements(std::vector<CreditVector> vectors)
{
    std::sort(vectors.begin(), vectors.end());
    vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
    // A dominating vector is lexicographically smaller, so it is already kept
    // when the dominated one shows up.
    std::vector<CreditVector> kept;
    for (auto& v : vectors) {
        bool dominated = false;
        for (const auto& k : kept)
            if (k.below(v)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(std::move(v));
    }
    return kept;
}

CreditAntichain::CreditAntichain(std::vector<CreditVector> vectors) : elements_(min_elements(std::move(vectors))) {}

bool CreditAntichain::covers(const CreditVector& c) const
{
    return std::any_of(elements_.begin(), elements_.end(), [&](const CreditVector& e) { return e.below(c); });
}

std::string to_string(const CreditAntichain& a)
{
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += to_string(a.elements()[i]);
    }
    return out + "}";
}

namespace {

/// max(0, u - w), or nullopt when a component exceeds the ceiling.
std::optional<CreditVector> requirement_before(const CreditVector& u, std::span<const Weight> w, std::int64_t ceiling)
{
    CreditVector out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::int64_t need = std::max<std::int64_t>(0, u[i] - w[i]);
        if (need > ceiling) return std::nullopt;
        out[i] = need;
    }
    return out;
}

} // namespace

CpreResult cpre(const GameStructure& game, const StateAntichains& current, std::int64_t ceiling)
{
    const auto& dims = game.objectives().energy_dims;
    CpreResult result;
    result.next.resize(game.state_count());
    for (StateIndex s = 0; s < game.state_count(); ++s) {
        bool flagged = false;
        if (game.state(s).owner == Player::System) {
            std::vector<CreditVector> candidates;
            for (const Edge& e : game.out_edges(s)) {
                const auto w = project_weights(e, dims);
                for (const auto& u : current[e.dst].elements()) {
                    if (auto need = requirement_before(u, w, ceiling))
                        candidates.push_back(std::move(*need));
                    else
                        flagged = true;
                }
            }
            result.next[s] = CreditAntichain(std::move(candidates));
        } else {
            std::vector<CreditVector> acc{CreditVector(dims.size())};
            for (const Edge& e : game.out_edges(s)) {
                const auto w = project_weights(e, dims);
                std::vector<CreditVector> per_edge;
                for (const auto& u : current[e.dst].elements()) {
                    if (auto need = requirement_before(u, w, ceiling))
                        per_edge.push_back(std::move(*need));
                    else
                        flagged = true;
                }
                per_edge = min_elements(std::move(per_edge));
                std::vector<CreditVector> joined;
                joined.reserve(acc.size() * per_edge.size());
                for (const auto& a : acc)
                    for (const auto& b : per_edge) {
                        CreditVector m(a.size());
                        for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
                        joined.push_back(std::move(m));
                    }
                acc = min_elements(std::move(joined));
                if (acc.empty()) break;
            }
            result.next[s] = CreditAntichain(std::move(acc));
        }
        if (flagged) result.ceiling_exceeded.push_back(s);
    }
    return result;
}

std::int64_t default_ceiling(const GameStructure& game)
{
    const auto n = static_cast<std::int64_t>(game.state_count());
    return (n - 1) * max_abs_weight(game);
}

EnergyFixpoint energy_fixpoint(const GameStructure& game, std::optional<std::int64_t> ceiling)
{
    EnergyFixpoint fp;
    fp.ceiling = ceiling.value_or(default_ceiling(game));
    const std::size_t k = game.objectives().energy_dims.size();
    fp.credits.assign(game.state_count(), CreditAntichain({CreditVector(k)}));

    bool flagged = false;
    while (true) {
        CpreResult step = cpre(game, fp.credits, fp.ceiling);
        ++fp.iterations;
        flagged = flagged || !step.ceiling_exceeded.empty();
        if (step.next == fp.credits) break;
        fp.credits = std::move(step.next);
    }
    const bool single_dim_bound = k == 1 && fp.ceiling >= default_ceiling(game);
    fp.status = (!flagged || single_dim_bound) ? FixpointStatus::Exact : FixpointStatus::Ceiling;
    return fp;
}

} // namespace gamesmith
