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

#include "gamesmith/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gamesmith {

// Keeps p - q * w inside int64 for every accepted input.
constexpr std::int64_t kMaxMagnitude = 1'000'000'000;

Rational Rational::reduced(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

bool operator==(const Rational& a, const Rational& b)
{
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const Rational& r)
{
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

bool CreditVector::below(const CreditVector& other) const
{
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (v_[i] > other.v_[i]) return false;
    return true;
}

bool CreditVector::is_zero() const
{
    return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

std::string to_string(const CreditVector& c)
{
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out + ")";
}

bool ObjectiveSpec::is_energy_dim(std::size_t dim) const
{
    return std::binary_search(energy_dims.begin(), energy_dims.end(), dim);
}

const MeanPayoffConstraint* ObjectiveSpec::mean_payoff_on(std::size_t dim) const
{
    for (const auto& mp : mean_payoff)
        if (mp.dim == dim) return &mp;
    return nullptr;
}

std::string GameStructure::dimension_name(std::size_t dim) const
{
    if (dim < dimension_names_.size()) return dimension_names_[dim];
    return "dim" + std::to_string(dim + 1);
}

std::span<const Edge> GameStructure::out_edges(StateIndex s) const
{
    return std::span<const Edge>(edges_).subspan(out_begin_[s], out_begin_[s + 1] - out_begin_[s]);
}

std::optional<StateIndex> GameStructure::find_state(std::string_view id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeIndex> GameStructure::find_edge(StateIndex src, StateIndex dst) const
{
    if (src >= states_.size()) return std::nullopt;
    for (EdgeIndex e = out_begin_[src]; e < out_begin_[src + 1]; ++e)
        if (edges_[e].dst == dst) return e;
    return std::nullopt;
}

bool operator==(const GameStructure& a, const GameStructure& b)
{
    return a.name_ == b.name_ && a.dimensions_ == b.dimensions_ && a.dimension_names_ == b.dimension_names_ &&
           a.states_ == b.states_ && a.initial_ == b.initial_ && a.edges_ == b.edges_ &&
           a.objectives_ == b.objectives_;
}

GameStructure validate_game(const RawGame& raw)
{
    return GameStructure::build(raw, true);
}

GameStructure GameStructure::build(const RawGame& raw, bool bounded_weights)
{
    using K = GameErrorKind;
    GameStructure g;
    g.name_ = raw.name;

    if (raw.dimensions == 0)
        throw GameError(K::BadDimensions, "dimension count must be positive", raw.dimensions_span);
    if (!raw.dimension_names.empty() && raw.dimension_names.size() != raw.dimensions)
        throw GameError(K::BadDimensions,
                        "expected " + std::to_string(raw.dimensions) + " dimension names, got " +
                            std::to_string(raw.dimension_names.size()),
                        raw.dimensions_span);
    g.dimensions_ = raw.dimensions;
    g.dimension_names_ = raw.dimension_names;

    std::optional<StateIndex> initial;
    for (const auto& rs : raw.states) {
        if (g.index_.count(rs.id)) throw GameError(K::DuplicateState, "state '" + rs.id + "' declared twice", rs.span);
        if (rs.owner != 1 && rs.owner != 2)
            throw GameError(K::BadInitial, "owner of '" + rs.id + "' must be 1 or 2", rs.span);
        const StateIndex idx = g.states_.size();
        g.index_.emplace(rs.id, idx);
        g.states_.push_back({rs.id, rs.owner == 1 ? Player::System : Player::Environment, rs.priority, rs.span});
        if (rs.initial) {
            if (initial) throw GameError(K::BadInitial, "more than one initial state ('" + rs.id + "')", rs.span);
            initial = idx;
        }
    }
    if (g.states_.empty()) throw GameError(K::BadInitial, "game has no states", raw.name_span);
    if (!initial) throw GameError(K::BadInitial, "no initial state declared", raw.name_span);
    g.initial_ = *initial;

    std::set<std::pair<StateIndex, StateIndex>> seen;
    for (const auto& re : raw.edges) {
        auto src = g.find_state(re.src);
        auto dst = g.find_state(re.dst);
        if (!src) throw GameError(K::DanglingEdge, "edge refers to undeclared state '" + re.src + "'", re.span);
        if (!dst) throw GameError(K::DanglingEdge, "edge refers to undeclared state '" + re.dst + "'", re.span);
        if (re.weights.size() != g.dimensions_)
            throw GameError(K::DimensionMismatch,
                            "edge " + re.src + " -> " + re.dst + " has " + std::to_string(re.weights.size()) +
                                " weights, expected " + std::to_string(g.dimensions_),
                            re.span);
        for (Weight w : re.weights)
            if (bounded_weights && (w > kMaxMagnitude || w < -kMaxMagnitude))
                throw GameError(K::DimensionMismatch, "weight magnitude above 10^9 on edge " + re.src + " -> " + re.dst,
                                re.span);
        if (!seen.emplace(*src, *dst).second)
            throw GameError(K::DuplicateEdge, "second edge " + re.src + " -> " + re.dst, re.span);
        g.edges_.push_back({*src, *dst, re.weights, re.label, re.span});
    }
    std::stable_sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    g.out_begin_.assign(g.states_.size() + 1, 0);
    for (const auto& e : g.edges_) ++g.out_begin_[e.src + 1];
    for (std::size_t s = 0; s < g.states_.size(); ++s) g.out_begin_[s + 1] += g.out_begin_[s];
    for (StateIndex s = 0; s < g.states_.size(); ++s)
        if (g.out_begin_[s] == g.out_begin_[s + 1])
            throw GameError(K::NonBlockingViolation, "state '" + g.states_[s].id + "' has no outgoing edge",
                            g.states_[s].span);

    ObjectiveSpec& spec = g.objectives_;
    std::set<std::size_t> used_dims;
    bool buchi_declared = false;
    for (const auto& ro : raw.objectives) {
        using OK = RawGame::RawObjective::Kind;
        if (ro.kind == OK::Energy || ro.kind == OK::MeanPayoff) {
            if (ro.dim < 1 || ro.dim > g.dimensions_)
                throw GameError(K::BadObjective, "dimension " + std::to_string(ro.dim) + " out of range", ro.span);
            if (!used_dims.insert(ro.dim - 1).second)
                throw GameError(K::BadObjective, "dimension " + std::to_string(ro.dim) + " already constrained",
                                ro.span);
            if (ro.kind == OK::Energy) {
                spec.energy_dims.push_back(ro.dim - 1);
            } else {
                if (ro.threshold.den <= 0)
                    throw GameError(K::BadObjective, "threshold denominator must be positive", ro.span);
                if (ro.threshold.den > kMaxMagnitude || ro.threshold.num > kMaxMagnitude ||
                    ro.threshold.num < -kMaxMagnitude)
                    throw GameError(K::BadObjective, "threshold magnitude above 10^9", ro.span);
                spec.mean_payoff.push_back({ro.dim - 1, ro.threshold});
            }
        } else if (ro.kind == OK::Buchi) {
            if (buchi_declared) throw GameError(K::BadObjective, "buchi objective declared twice", ro.span);
            buchi_declared = true;
            for (const auto& id : ro.states) {
                auto s = g.find_state(id);
                if (!s) throw GameError(K::BadObjective, "buchi target '" + id + "' is not a state", ro.span);
                spec.buchi_targets.push_back(*s);
            }
            if (spec.buchi_targets.empty())
                throw GameError(K::BadObjective, "buchi objective needs at least one state", ro.span);
        } else {
            spec.use_parity = true;
        }
        if (buchi_declared && spec.use_parity)
            throw GameError(K::BadObjective, "declare either a buchi or a parity objective, not both", ro.span);
    }
    std::sort(spec.energy_dims.begin(), spec.energy_dims.end());
    std::sort(spec.mean_payoff.begin(), spec.mean_payoff.end(),
              [](const auto& a, const auto& b) { return a.dim < b.dim; });
    std::sort(spec.buchi_targets.begin(), spec.buchi_targets.end());
    spec.buchi_targets.erase(std::unique(spec.buchi_targets.begin(), spec.buchi_targets.end()),
                             spec.buchi_targets.end());
    return g;
}

RawGame to_raw(const GameStructure& game)
{
    RawGame raw;
    raw.name = game.name();
    raw.dimensions = game.dimensions();
    raw.dimension_names = game.dimension_names();
    for (StateIndex s = 0; s < game.state_count(); ++s) {
        const State& st = game.state(s);
        raw.states.push_back({st.id, st.owner == Player::System ? 1 : 2, st.priority, s == game.initial(), st.span});
    }
    for (const Edge& e : game.edges())
        raw.edges.push_back({game.state(e.src).id, game.state(e.dst).id, e.weights, e.label, e.span});

    using OK = RawGame::RawObjective::Kind;
    const ObjectiveSpec& spec = game.objectives();
    // Energy and mean-payoff lines interleaved in dimension order.
    for (std::size_t d = 0; d < game.dimensions(); ++d) {
        if (spec.is_energy_dim(d)) {
            RawGame::RawObjective o;
            o.kind = OK::Energy;
            o.dim = d + 1;
            raw.objectives.push_back(o);
        } else if (const auto* mp = spec.mean_payoff_on(d)) {
            RawGame::RawObjective o;
            o.kind = OK::MeanPayoff;
            o.dim = d + 1;
            o.threshold = mp->threshold;
            raw.objectives.push_back(o);
        }
    }
    if (!spec.buchi_targets.empty()) {
        RawGame::RawObjective o;
        o.kind = OK::Buchi;
        for (StateIndex s : spec.buchi_targets) o.states.push_back(game.state(s).id);
        raw.objectives.push_back(o);
    }
    if (spec.use_parity) {
        RawGame::RawObjective o;
        o.kind = OK::Parity;
        raw.objectives.push_back(o);
    }
    return raw;
}

std::optional<CreditVector> try_apply_edge(const CreditVector& credit, std::span<const Weight> weights,
                                           std::optional<std::int64_t> cap)
{
    CreditVector out(credit.size());
    for (std::size_t i = 0; i < credit.size(); ++i) {
        std::int64_t v = credit[i] + weights[i];
        if (v < 0) return std::nullopt;
        if (cap && v > *cap) v = *cap;
        out[i] = v;
    }
    return out;
}

CreditVector apply_edge(const CreditVector& credit, std::span<const Weight> weights, std::optional<std::int64_t> cap)
{
    if (weights.size() != credit.size()) throw Error("apply_edge: weight slice and credit differ in length");
    for (std::size_t i = 0; i < credit.size(); ++i)
        if (credit[i] + weights[i] < 0) throw EnergyUnderflow(i);
    return *try_apply_edge(credit, weights, cap);
}

bool TransformReport::is_derived(std::size_t dim) const
{
    return std::any_of(reductions.begin(), reductions.end(), [dim](const auto& r) { return r.dim == dim; });
}

TransformedGame mp_transform(const GameStructure& game)
{
    const ObjectiveSpec& spec = game.objectives();
    if (spec.mean_payoff.empty()) return {game, {}};

    RawGame raw = to_raw(game);
    TransformReport report;
    for (const auto& mp : spec.mean_payoff) {
        report.reductions.push_back({mp.dim, mp.threshold});
        for (auto& e : raw.edges) e.weights[mp.dim] = mp.threshold.num - mp.threshold.den * e.weights[mp.dim];
    }
    // Reclassify: every mean-payoff dimension becomes an energy dimension.
    for (auto& o : raw.objectives)
        if (o.kind == RawGame::RawObjective::Kind::MeanPayoff) o.kind = RawGame::RawObjective::Kind::Energy;

    // Rewritten weights may exceed the input magnitude bound.
    return {GameStructure::build(raw, false), report};
}

Weight max_abs_weight(const GameStructure& game)
{
    Weight w = 0;
    for (const Edge& e : game.edges())
        for (std::size_t d : game.objectives().energy_dims) w = std::max(w, e.weights[d] < 0 ? -e.weights[d] : e.weights[d]);
    return w;
}

std::vector<Weight> project_weights(const Edge& e, std::span<const std::size_t> dims)
{
    std::vector<Weight> out;
    out.reserve(dims.size());
    for (std::size_t d : dims) out.push_back(e.weights[d]);
    return out;
}

std::vector<std::uint32_t> effective_priorities(const GameStructure& game)
{
    const ObjectiveSpec& spec = game.objectives();
    std::vector<std::uint32_t> p(game.state_count(), 0);
    if (spec.use_parity) {
        for (StateIndex s = 0; s < game.state_count(); ++s) p[s] = game.state(s).priority;
    } else if (!spec.buchi_targets.empty()) {
        std::fill(p.begin(), p.end(), 1);
        for (StateIndex s : spec.buchi_targets) p[s] = 0;
    }
    return p;
}

GameStructure with_objectives(const GameStructure& game, const ObjectiveSpec& spec)
{
    RawGame raw = to_raw(game);
    raw.objectives.clear();
    using OK = RawGame::RawObjective::Kind;
    for (std::size_t d : spec.energy_dims) {
        RawGame::RawObjective o;
        o.kind = OK::Energy;
        o.dim = d + 1;
        raw.objectives.push_back(o);
    }
    for (const auto& mp : spec.mean_payoff) {
        RawGame::RawObjective o;
        o.kind = OK::MeanPayoff;
        o.dim = mp.dim + 1;
        o.threshold = mp.threshold;
        raw.objectives.push_back(o);
    }
    if (!spec.buchi_targets.empty()) {
        RawGame::RawObjective o;
        o.kind = OK::Buchi;
        for (StateIndex s : spec.buchi_targets) o.states.push_back(game.state(s).id);
        raw.objectives.push_back(o);
    }
    if (spec.use_parity) {
        RawGame::RawObjective o;
        o.kind = OK::Parity;
        raw.objectives.push_back(o);
    }
    return validate_game(raw);
}

std::optional<std::size_t> StrategyDoc::find_memory(std::string_view id) const
{
    for (std::size_t i = 0; i < memories.size(); ++i)
        if (memories[i] == id) return i;
    return std::nullopt;
}

} // namespace gamesmith
