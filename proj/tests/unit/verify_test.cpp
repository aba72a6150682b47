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

#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "gamesmith/gdl.hpp"
#include "gamesmith/verify.hpp"
#include "oracles.hpp"

using namespace gamesmith;
using namespace gamesmith::testing;

namespace {

/// Edge of the product move u -> v, npos when there is none.
EdgeIndex move_edge(const ProductGraph& p, std::size_t u, std::size_t v)
{
    for (const auto& mv : p.moves[u])
        if (mv.target == v) return mv.edge;
    return npos;
}

/// Checks that the lasso is a path of the product from node 0 and that its
/// cycle closes; returns the nodes in order.
std::vector<std::size_t> walk(const ProductGraph& p, const Lasso& l)
{
    std::vector<std::size_t> nodes = l.stem;
    nodes.insert(nodes.end(), l.cycle.begin(), l.cycle.end());
    REQUIRE_FALSE(nodes.empty());
    CHECK(nodes.front() == 0);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) CHECK(move_edge(p, nodes[i], nodes[i + 1]) != npos);
    if (!l.cycle.empty()) CHECK(move_edge(p, l.cycle.back(), l.cycle.front()) != npos);
    return nodes;
}

std::int64_t cycle_sum(const ProductGraph& p, const GameStructure& g, const std::vector<std::size_t>& cycle,
                       std::size_t dim)
{
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        sum += g.edge(move_edge(p, cycle[i], cycle[(i + 1) % cycle.size()])).weights[dim];
    return sum;
}

std::string state_of(const ProductGraph& p, const GameStructure& g, std::size_t v)
{
    return g.state(p.nodes[v].state).id;
}

GameStructure single(const std::string& objectives, int weight)
{
    return gdl::parse_game("game g\ndimensions 1\n" + objectives + "state a owner=1 init\nedge a -> a weights=(" +
                           std::to_string(weight) + ")\n");
}

StrategyDoc single_strategy()
{
    return gdl::parse_strategy("strategy s for g\nmemory m init\nmove m a -> a\nupdate m a -> a => m\n");
}

} // namespace

TEST_CASE("sample controller product")
{
    const GameStructure g = lawnmower();
    const ProductGraph p = build_product(g, sample_strategy(), {0, 0});
    CHECK(p.size() == 9);
    const std::set<std::string> labels(p.labels.begin(), p.labels.end());
    const std::set<std::string> expected{"base/m00",     "cloudy/m00",          "sunny/m00",
                                         "base/m02",     "cloudy/m02",          "sunny/m02",
                                         "use_fuel/m02", "grass_cutting/m00",   "grass_cutting/m02"};
    CHECK(labels == expected);
    CHECK(p.label(0) == "base/m00");
    for (std::size_t v = 0; v < p.size(); ++v)
        if (g.state(p.nodes[v].state).owner == Player::System) CHECK(p.moves[v].size() == 1);
    CHECK(p.unreachable_unspecified == 0);
    CHECK(build_product(g, test_strategy("always_rest.strategy"), {0, 0}).unreachable_unspecified == 2);
}

TEST_CASE("sample controller verifies from (0,0)")
{
    const GameStructure g = lawnmower();
    const StrategyDoc s = sample_strategy();
    const VerificationReport r = verify_all(g, s, {0, 0});
    CHECK(r.pass);
    CHECK(r.product_nodes == 9);
    REQUIRE(r.energy.size() == 2);
    for (const auto& e : r.energy) {
        CHECK(e.pass);
        CHECK(e.min_prefix_sum == 0);
    }
    REQUIRE(r.mean_payoff.size() == 1);
    CHECK(r.mean_payoff[0].pass);
    CHECK(r.mean_payoff[0].max_cycle_mean == Rational{25, 6});
    REQUIRE(r.recurrence.has_value());
    CHECK(r.recurrence->pass);
    CHECK(r.warnings.empty());

    const ProductGraph p = build_product(g, s, {0, 0});
    CHECK(max_mean_by_cycles(p, g, 2) == Rational{25, 6});
    CHECK(min_prefix_by_walks(p, g, 0, 81) == 0);
    CHECK(min_prefix_by_walks(p, g, 1, 81) == 0);
    CHECK_FALSE(has_rejecting_cycle(p, g));
}

TEST_CASE("missing move is reported with its reachable path")
{
    const GameStructure g = lawnmower();
    const StrategyDoc s = gdl::parse_strategy(
        replace_once(read_text(data_path("lawnmower_sample.strategy")), "move m02 cloudy -> use_fuel\n", ""));
    try {
        build_product(g, s, {0, 0});
        FAIL("expected UndefinedMove");
    } catch (const ProductError& e) {
        CHECK(e.kind() == ProductErrorKind::UndefinedMove);
        CHECK(e.detail().find("m02") != std::string::npos);
        CHECK(e.detail().find("cloudy") != std::string::npos);
        REQUIRE_FALSE(e.path().empty());
        CHECK(e.path().front() == "base/m00");
        CHECK(e.path().back() == "cloudy/m02");
    }
}

TEST_CASE("missing update is reported")
{
    const StrategyDoc s = gdl::parse_strategy(
        replace_once(read_text(data_path("lawnmower_sample.strategy")), "update m00 base -> sunny => m00\n", ""));
    try {
        build_product(lawnmower(), s, {0, 0});
        FAIL("expected UndefinedUpdate");
    } catch (const ProductError& e) {
        CHECK(e.kind() == ProductErrorKind::UndefinedUpdate);
        CHECK(e.path() == std::vector<std::string>{"base/m00"});
    }
}

TEST_CASE("strategy entries are resolved against the game")
{
    const GameStructure g = lawnmower();
    const std::string text = read_text(data_path("lawnmower_sample.strategy"));
    auto kind_of = [&](const std::string& changed) {
        try {
            build_product(g, gdl::parse_strategy(changed), {0, 0});
        } catch (const ProductError& e) {
            return std::optional<ProductErrorKind>(e.kind());
        }
        return std::optional<ProductErrorKind>();
    };
    CHECK(kind_of(replace_once(text, "move m00 sunny -> grass_cutting", "move m00 sunny -> garden")) ==
          ProductErrorKind::UnknownState);
    CHECK(kind_of(replace_once(text, "move m00 sunny -> grass_cutting", "move m00 sunny -> use_fuel")) ==
          ProductErrorKind::IllegalStrategyMove);
    CHECK(kind_of(replace_once(text, "update m00 base -> sunny => m00", "update m00 base -> use_fuel => m00")) ==
          ProductErrorKind::IllegalStrategyMove);
    CHECK_THROWS_AS(build_product(g, sample_strategy(), {0}), ProductError);
    CHECK_THROWS_AS(build_product(g, sample_strategy(), {0, -1}), ProductError);
}

TEST_CASE("fast mow fails energy at the cat attack edge")
{
    const GameStructure g = lawnmower();
    const VerificationReport r = verify_all(g, test_strategy("fast_mow.strategy"), {0, 0});
    CHECK_FALSE(r.pass);
    REQUIRE(r.energy.size() == 2);
    const ProductGraph p = build_product(g, test_strategy("fast_mow.strategy"), {0, 0});
    for (const auto& e : r.energy) {
        CHECK_FALSE(e.pass);
        CHECK_FALSE(e.min_prefix_sum.has_value());
        REQUIRE(e.witness.has_value());
        CHECK(e.witness->cycle.empty());
        const auto nodes = walk(p, *e.witness);
        REQUIRE(nodes.size() >= 2);
        const EdgeIndex last = move_edge(p, nodes[nodes.size() - 2], nodes.back());
        CHECK(g.edge(last).weights == std::vector<Weight>{-1, -1, 2});
        std::int64_t level = e.credit;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            level += g.edge(move_edge(p, nodes[i], nodes[i + 1])).weights[e.dim];
            CHECK((level < 0) == (i + 2 == nodes.size()));
        }
    }
    CHECK(state_of(p, g, r.energy[0].witness->stem.back()) == "cat_attack");
}

TEST_CASE("a large credit outlasts every short prefix, so the witness is a negative cycle")
{
    const GameStructure g = lawnmower();
    const ProductGraph p = build_product(g, test_strategy("fast_mow.strategy"), {0, 0});
    const EnergyCheck e = check_energy(p, g, 0, 1000);
    CHECK_FALSE(e.pass);
    REQUIRE(e.witness.has_value());
    REQUIRE_FALSE(e.witness->cycle.empty());
    walk(p, *e.witness);
    CHECK(cycle_sum(p, g, e.witness->cycle, 0) < 0);
}

TEST_CASE("always resting at cloudy never cuts grass")
{
    const GameStructure g = lawnmower();
    const StrategyDoc s = test_strategy("always_rest.strategy");
    const VerificationReport r = verify_all(g, s, {0, 0});
    CHECK_FALSE(r.pass);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("none of them is reachable") != std::string::npos);
    REQUIRE(r.recurrence.has_value());
    CHECK(r.recurrence->buchi);
    CHECK_FALSE(r.recurrence->pass);
    REQUIRE(r.recurrence->witness.has_value());
    const ProductGraph p = build_product(g, s, {0, 0});
    walk(p, *r.recurrence->witness);
    std::vector<std::string> cycle;
    for (auto v : r.recurrence->witness->cycle) cycle.push_back(state_of(p, g, v));
    CHECK(cycle == std::vector<std::string>{"base", "cloudy"});
    CHECK(state_of(p, g, r.recurrence->witness->stem.front()) == "base");
    CHECK(has_rejecting_cycle(p, g));
}

TEST_CASE("tighter threshold fails mean payoff at 25/6")
{
    const std::string text =
        replace_once(lawnmower_text(), "objective meanpayoff dim=3 threshold=10/1", "objective meanpayoff dim=3 threshold=4/1");
    const GameStructure g = gdl::parse_game(text);
    const VerificationReport r = verify_all(g, sample_strategy(), {0, 0});
    CHECK_FALSE(r.pass);
    REQUIRE(r.mean_payoff.size() == 1);
    CHECK_FALSE(r.mean_payoff[0].pass);
    CHECK(r.mean_payoff[0].max_cycle_mean == Rational{25, 6});
    REQUIRE(r.mean_payoff[0].witness.has_value());
    const ProductGraph p = build_product(g, sample_strategy(), {0, 0});
    const auto& cycle = r.mean_payoff[0].witness->cycle;
    walk(p, *r.mean_payoff[0].witness);
    CHECK(Rational{4, 1} < Rational::reduced(cycle_sum(p, g, cycle, 2), static_cast<std::int64_t>(cycle.size())));
    for (const auto& e : r.energy) CHECK(e.pass);
    CHECK(r.recurrence->pass);
}

TEST_CASE("threshold exactly at the cycle mean passes")
{
    const std::string text = replace_once(lawnmower_text(), "threshold=10/1", "threshold=25/6");
    CHECK(verify_all(gdl::parse_game(text), sample_strategy(), {0, 0}).pass);
    const std::string below = replace_once(lawnmower_text(), "threshold=10/1", "threshold=24/6");
    CHECK_FALSE(verify_all(gdl::parse_game(below), sample_strategy(), {0, 0}).pass);
}

TEST_CASE("unreachable Büchi target fails")
{
    const std::string text = replace_once(lawnmower_text(), "states=grass_cutting", "states=cat_attack");
    const VerificationReport r = verify_all(gdl::parse_game(text), sample_strategy(), {0, 0});
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.recurrence->pass);
}

TEST_CASE("single-state products")
{
    const GameStructure g = single("objective energy dim=1\n", 0);
    const ProductGraph p = build_product(g, single_strategy(), {0});
    CHECK(p.size() == 1);
    CHECK(p.moves[0].size() == 1);

    const GameStructure down = single("objective energy dim=1\n", -1);
    const ProductGraph dp = build_product(down, single_strategy(), {1000});
    const EnergyCheck e = check_energy(dp, down, 0, 1000);
    CHECK_FALSE(e.pass);
    CHECK_FALSE(e.min_prefix_sum.has_value());
    REQUIRE(e.witness.has_value());
    CHECK(e.witness->cycle == std::vector<std::size_t>{0});

    const GameStructure slow = single("objective meanpayoff dim=1 threshold=10/1\n", 20);
    const ProductGraph sp = build_product(slow, single_strategy(), {});
    const MeanPayoffCheck m = check_mean_payoff(sp, slow, 0, Rational{10, 1});
    CHECK_FALSE(m.pass);
    CHECK(m.max_cycle_mean == Rational{20, 1});

    const GameStructure zero = single("objective meanpayoff dim=1 threshold=0/1\n", 0);
    const MeanPayoffCheck z = check_mean_payoff(build_product(zero, single_strategy(), {}), zero, 0, Rational{0, 1});
    CHECK(z.pass);
    CHECK(z.max_cycle_mean == Rational{0, 1});

    const GameStructure accepting = single("objective buchi states=a\n", 0);
    CHECK(check_recurrence(build_product(accepting, single_strategy(), {}), accepting).pass);
}

TEST_CASE("parity recurrence reports the odd priority")
{
    const GameStructure g = gdl::parse_game("game g\ndimensions 1\nobjective parity\n"
                                            "state a owner=2 priority=2 init\nstate b owner=2 priority=1\n"
                                            "state c owner=2 priority=3\n"
                                            "edge a -> a weights=(0)\nedge a -> b weights=(0)\n"
                                            "edge b -> a weights=(0)\nedge a -> c weights=(0)\n"
                                            "edge c -> c weights=(0)\n");
    const StrategyDoc s = gdl::parse_strategy("strategy s for g\nmemory m init\n"
                                              "update m a -> a => m\nupdate m a -> b => m\n"
                                              "update m b -> a => m\nupdate m a -> c => m\nupdate m c -> c => m\n");
    const RecurrenceCheck r = check_recurrence(build_product(g, s, {}), g);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.buchi);
    CHECK(r.odd_priority == 1u);
}

TEST_CASE("checks agree with cycle and walk enumeration on random products")
{
    Rng rng(9090);
    int negative = 0;
    int finite = 0;
    for (int round = 0; round < 300; ++round) {
        RandomGameParams params;
        params.max_states = 6;
        params.dimensions = 2;
        params.mean_payoff_dims = {1};
        params.buchi = true;
        const GameStructure g = random_game(rng, params);
        const StrategyDoc s = random_strategy(rng, g, 1 + round % 2);
        const ProductGraph p = build_product(g, s, {0});
        if (p.size() > 12) continue;

        const MeanPayoffCheck m = check_mean_payoff(p, g, 1, g.objectives().mean_payoff[0].threshold);
        const auto brute = max_mean_by_cycles(p, g, 1);
        REQUIRE(brute.has_value());
        CHECK(m.max_cycle_mean == *brute);
        CHECK(max_cycle_mean(p, g, 1) == *brute);
        CHECK(m.pass == !(g.objectives().mean_payoff[0].threshold < *brute));
        if (!m.pass) {
            REQUIRE(m.witness.has_value());
            walk(p, *m.witness);
            const auto& c = m.witness->cycle;
            CHECK(g.objectives().mean_payoff[0].threshold <
                  Rational::reduced(cycle_sum(p, g, c, 1), static_cast<std::int64_t>(c.size())));
        }

        const EnergyCheck e = check_energy(p, g, 0, 1);
        const bool neg = has_negative_cycle(p, g, 0);
        CHECK(e.min_prefix_sum.has_value() == !neg);
        if (neg) {
            ++negative;
            CHECK_FALSE(e.pass);
            REQUIRE(e.witness.has_value());
            const auto nodes = walk(p, *e.witness);
            if (e.witness->cycle.empty()) {
                std::int64_t level = 1;
                for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
                    level += g.edge(move_edge(p, nodes[i], nodes[i + 1])).weights[0];
                CHECK(level < 0);
            } else {
                CHECK(cycle_sum(p, g, e.witness->cycle, 0) < 0);
            }
        } else {
            ++finite;
            CHECK(*e.min_prefix_sum == min_prefix_by_walks(p, g, 0, p.size() * p.size()));
            CHECK(e.pass == (1 + *e.min_prefix_sum >= 0));
            if (!e.pass) {
                REQUIRE(e.witness.has_value());
                const auto nodes = walk(p, *e.witness);
                std::int64_t level = 1;
                for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
                    level += g.edge(move_edge(p, nodes[i], nodes[i + 1])).weights[0];
                CHECK(level < 0);
            }
        }

        const RecurrenceCheck rc = check_recurrence(p, g);
        CHECK(rc.pass == !has_rejecting_cycle(p, g));
        if (!rc.pass) {
            REQUIRE(rc.witness.has_value());
            walk(p, *rc.witness);
            for (auto v : rc.witness->cycle) {
                const auto& t = g.objectives().buchi_targets;
                CHECK(std::find(t.begin(), t.end(), p.nodes[v].state) == t.end());
            }
        }
    }
    CHECK(negative > 20);
    CHECK(finite > 20);
}
