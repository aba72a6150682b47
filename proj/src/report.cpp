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

#include "gamesmith/report.hpp"

#include <iomanip>
#include <sstream>

namespace gamesmith {

Json to_json(const Rational& r)
{
    return Json{{"num", r.num}, {"den", r.den}};
}

Json to_json(const CreditVector& c)
{
    Json out = Json::array();
    for (std::int64_t x : c) out.push_back(x);
    return out;
}

Json to_json(const CreditAntichain& a)
{
    Json out = Json::array();
    for (const auto& c : a.elements()) out.push_back(to_json(c));
    return out;
}

namespace {

std::string error_kind(const Error& e)
{
    if (dynamic_cast<const SyntaxError*>(&e)) return "SyntaxError";
    if (auto g = dynamic_cast<const GameError*>(&e)) return to_string(g->kind());
    if (auto s = dynamic_cast<const StrategyError*>(&e)) return to_string(s->kind());
    if (auto p = dynamic_cast<const ProductError*>(&e)) return to_string(p->kind());
    if (auto s = dynamic_cast<const SessionError*>(&e)) return to_string(s->kind());
    if (dynamic_cast<const EnergyUnderflow*>(&e)) return "EnergyUnderflow";
    if (dynamic_cast<const ArenaTooLarge*>(&e)) return "ArenaTooLarge";
    if (dynamic_cast<const InternalError*>(&e)) return "InternalError";
    return "Error";
}

Json witness_json(const std::optional<Lasso>& w, const std::vector<std::string>& labels)
{
    if (!w) return nullptr;
    Json stem = Json::array(), cycle = Json::array();
    for (std::size_t v : w->stem) stem.push_back(labels[v]);
    for (std::size_t v : w->cycle) cycle.push_back(labels[v]);
    return Json{{"stem", stem}, {"cycle", cycle}};
}

std::string join_ids(const GameStructure& game, const std::vector<StateIndex>& states)
{
    std::string out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (i) out += ',';
        out += game.state(states[i]).id;
    }
    return out;
}

std::string millis_text(double ms)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << ms << " ms";
    return os.str();
}

const char* fixpoint_name(FixpointStatus s)
{
    return s == FixpointStatus::Exact ? "exact" : "ceiling";
}

} // namespace

Json to_json(const Error& e)
{
    Json out{{"error", error_kind(e)}, {"message", e.detail()}};
    if (e.span())
        out["span"] = Json{{"line", e.span()->line}, {"column", e.span()->column}};
    else
        out["span"] = nullptr;
    if (auto p = dynamic_cast<const ProductError*>(&e)) out["path"] = p->path();
    return out;
}

Json check_json(const GameStructure& game)
{
    const ObjectiveSpec& spec = game.objectives();
    Json energy = Json::array(), mp = Json::array(), buchi = Json::array();
    for (std::size_t d : spec.energy_dims) energy.push_back(Json{{"dim", d + 1}, {"name", game.dimension_name(d)}});
    for (const auto& c : spec.mean_payoff)
        mp.push_back(Json{{"dim", c.dim + 1}, {"name", game.dimension_name(c.dim)}, {"threshold", to_json(c.threshold)}});
    for (StateIndex s : spec.buchi_targets) buchi.push_back(game.state(s).id);
    return Json{{"kind", "check"},
                {"game", game.name()},
                {"states", game.state_count()},
                {"edges", game.edges().size()},
                {"dimensions", game.dimensions()},
                {"initial", game.state(game.initial()).id},
                {"energy", energy},
                {"mean_payoff", mp},
                {"buchi", buchi},
                {"parity", spec.use_parity}};
}

std::string check_text(const GameStructure& game)
{
    const ObjectiveSpec& spec = game.objectives();
    std::ostringstream os;
    os << "OK " << game.name() << ": " << game.state_count() << " states, " << game.edges().size() << " edges, "
       << game.dimensions() << " dimensions\n";
    for (std::size_t d : spec.energy_dims) os << "  energy " << game.dimension_name(d) << "\n";
    for (const auto& c : spec.mean_payoff)
        os << "  mean-payoff " << game.dimension_name(c.dim) << " <= " << to_string(c.threshold) << "\n";
    if (spec.use_parity) os << "  parity\n";
    if (!spec.buchi_targets.empty()) os << "  buchi " << join_ids(game, spec.buchi_targets) << "\n";
    return os.str();
}

Json synthesis_json(const GameStructure& game, const SynthesisResult& r, bool timings)
{
    const ObjectiveSpec& spec = game.objectives();
    Json dims = Json::array();
    for (std::size_t d : spec.energy_dims) dims.push_back(game.dimension_name(d));
    Json slack = Json::array();
    for (std::size_t i = 0; i < r.transform.reductions.size() && i < r.slack.size(); ++i)
        slack.push_back(Json{{"dim", game.dimension_name(r.transform.reductions[i].dim)}, {"value", r.slack[i]}});
    Json attempts = Json::array();
    for (const auto& a : r.attempts) {
        Json j{{"cap", a.cap}, {"nodes", a.nodes}, {"outcome", to_string(a.outcome)}};
        if (timings) j["millis"] = a.millis;
        attempts.push_back(j);
    }
    Json strategy = nullptr;
    if (r.strategy) strategy = Json{{"name", r.strategy->name}, {"memories", r.strategy->memories.size()}};

    Json out{{"kind", "synthesis"},
             {"game", game.name()},
             {"status", to_string(r.status)},
             {"engine", to_string(r.engine_used)},
             {"energy_dims", dims},
             {"credits", to_json(r.credits)},
             {"chosen_credit", r.chosen_credit ? to_json(*r.chosen_credit) : Json(nullptr)},
             {"slack", slack},
             {"last_cap", r.last_cap ? Json(*r.last_cap) : Json(nullptr)},
             {"fixpoint", r.fixpoint_status ? Json(fixpoint_name(*r.fixpoint_status)) : Json(nullptr)},
             {"attempts", attempts},
             {"strategy", strategy},
             {"notes", r.notes}};
    if (timings) out["total_millis"] = r.total_millis;
    return out;
}

std::string synthesis_text(const GameStructure& game, const SynthesisResult& r, bool timings)
{
    std::ostringstream os;
    os << to_string(r.status);
    if (r.status == SynthesisStatus::Winning) os << ", credits " << to_string(r.credits);
    if (r.status == SynthesisStatus::Unknown && r.last_cap) os << " at cap " << *r.last_cap;
    os << "\n";
    os << "engine: " << to_string(r.engine_used) << "\n";
    for (std::size_t i = 0; i < r.transform.reductions.size() && i < r.slack.size(); ++i)
        os << "slack " << game.dimension_name(r.transform.reductions[i].dim) << ": " << r.slack[i]
           << " (mean-payoff offset)\n";
    if (r.fixpoint_status) os << "energy fixpoint: " << fixpoint_name(*r.fixpoint_status) << "\n";
    for (const auto& a : r.attempts) {
        os << "cap " << a.cap << ": " << a.nodes << " nodes, " << to_string(a.outcome);
        if (timings) os << ", " << millis_text(a.millis);
        os << "\n";
    }
    if (r.strategy) os << "strategy: " << r.strategy->name << ", " << r.strategy->memories.size() << " memories\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    if (timings) os << "total: " << millis_text(r.total_millis) << "\n";
    return os.str();
}

std::string lasso_text(const Lasso& lasso, const std::vector<std::string>& labels)
{
    std::string out;
    for (std::size_t i = 0; i < lasso.stem.size(); ++i) {
        if (i) out += " -> ";
        out += labels[lasso.stem[i]];
    }
    if (lasso.cycle.empty()) return out;
    if (!out.empty()) out += " -> ";
    out += "[";
    for (std::size_t i = 0; i < lasso.cycle.size(); ++i) {
        if (i) out += " -> ";
        out += labels[lasso.cycle[i]];
    }
    return out + "]";
}

Json verification_json(const GameStructure& game, const VerificationReport& r)
{
    const ObjectiveSpec& spec = game.objectives();
    Json energy = Json::array();
    for (const auto& e : r.energy)
        energy.push_back(Json{{"dim", game.dimension_name(e.dim)},
                              {"index", e.dim + 1},
                              {"credit", e.credit},
                              {"pass", e.pass},
                              {"min_prefix_sum", e.min_prefix_sum ? Json(*e.min_prefix_sum) : Json(nullptr)},
                              {"unbounded", !e.min_prefix_sum.has_value()},
                              {"witness", witness_json(e.witness, r.node_labels)}});
    Json mp = Json::array();
    for (const auto& m : r.mean_payoff)
        mp.push_back(Json{{"dim", game.dimension_name(m.dim)},
                          {"index", m.dim + 1},
                          {"threshold", to_json(m.threshold)},
                          {"pass", m.pass},
                          {"max_cycle_mean", to_json(m.max_cycle_mean)},
                          {"witness", witness_json(m.witness, r.node_labels)}});
    Json recurrence = nullptr;
    if (r.recurrence) {
        Json targets = Json::array();
        for (StateIndex s : spec.buchi_targets) targets.push_back(game.state(s).id);
        recurrence = Json{{"kind", r.recurrence->buchi ? "buchi" : "parity"},
                          {"targets", targets},
                          {"pass", r.recurrence->pass},
                          {"odd_priority", r.recurrence->odd_priority ? Json(*r.recurrence->odd_priority)
                                                                      : Json(nullptr)},
                          {"witness", witness_json(r.recurrence->witness, r.node_labels)}};
    }
    return Json{{"kind", "verification"},
                {"game", r.game},
                {"strategy", r.strategy},
                {"credit", to_json(r.credit)},
                {"pass", r.pass},
                {"product", Json{{"nodes", r.product_nodes}, {"moves", r.product_moves}}},
                {"energy", energy},
                {"mean_payoff", mp},
                {"recurrence", recurrence},
                {"warnings", r.warnings}};
}

std::string verification_text(const GameStructure& game, const VerificationReport& r)
{
    const ObjectiveSpec& spec = game.objectives();
    auto verdict = [](bool pass) { return pass ? "PASS" : "FAIL"; };
    std::ostringstream os;
    os << verdict(r.pass) << " " << r.strategy << " on " << r.game << ", credit " << to_string(r.credit) << "\n";
    os << "product: " << r.product_nodes << " nodes, " << r.product_moves << " moves\n";
    for (const auto& e : r.energy) {
        os << "energy " << game.dimension_name(e.dim) << ": " << verdict(e.pass) << ", min prefix sum ";
        if (e.min_prefix_sum)
            os << *e.min_prefix_sum;
        else
            os << "-inf";
        os << ", credit " << e.credit << "\n";
        if (e.witness) os << "  witness: " << lasso_text(*e.witness, r.node_labels) << "\n";
    }
    for (const auto& m : r.mean_payoff) {
        os << "mean-payoff " << game.dimension_name(m.dim) << ": " << verdict(m.pass) << ", max cycle mean "
           << to_string(m.max_cycle_mean) << (m.pass ? " <= " : " > ") << to_string(m.threshold) << "\n";
        if (m.witness) os << "  witness: " << lasso_text(*m.witness, r.node_labels) << "\n";
    }
    if (r.recurrence) {
        if (r.recurrence->buchi)
            os << "buchi " << join_ids(game, spec.buchi_targets) << ": " << verdict(r.recurrence->pass) << "\n";
        else
            os << "parity: " << verdict(r.recurrence->pass) << "\n";
        if (r.recurrence->odd_priority) os << "  odd priority " << *r.recurrence->odd_priority << "\n";
        if (r.recurrence->witness) os << "  witness: " << lasso_text(*r.recurrence->witness, r.node_labels) << "\n";
    }
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    return os.str();
}

} // namespace gamesmith
