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

#include <algorithm>

#include "gamesmith/antichain.hpp"
#include "gamesmith/gdl.hpp"
#include "oracles.hpp"

using namespace gamesmith;
using namespace gamesmith::testing;

namespace {

using Vs = std::vector<CreditVector>;

GameStructure two_way(int owner)
{
    return gdl::parse_game("game g\ndimensions 2\nobjective energy dim=1\nobjective energy dim=2\n"
                           "state s owner=" +
                           std::to_string(owner) +
                           " init\nstate a owner=1\nstate b owner=1\n"
                           "edge s -> a weights=(0,0)\nedge s -> b weights=(0,0)\n"
                           "edge a -> a weights=(0,0)\nedge b -> b weights=(0,0)\n");
}

} // namespace

TEST_CASE("min_elements")
{
    CHECK(min_elements({{1, 0}, {0, 1}, {1, 1}}) == Vs{{0, 1}, {1, 0}});
    CHECK(min_elements({}).empty());
    CHECK(min_elements({{2, 2}}) == Vs{{2, 2}});
    CHECK(min_elements({{2, 2}, {2, 2}, {3, 1}}) == Vs{{2, 2}, {3, 1}});
}

TEST_CASE("min_elements is order independent and keeps exactly the undominated vectors")
{
    Rng rng(17);
    std::uniform_int_distribution<std::int64_t> level(0, 4);
    for (int round = 0; round < 300; ++round) {
        Vs input;
        const int n = round % 9;
        for (int i = 0; i < n; ++i) input.push_back({level(rng), level(rng), level(rng)});
        const Vs result = min_elements(input);
        Vs shuffled = input;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(min_elements(shuffled) == result);
        for (const auto& v : input) {
            bool dominated = false;
            for (const auto& u : input)
                if (u != v && u.below(v)) dominated = true;
            const bool kept = std::find(result.begin(), result.end(), v) != result.end();
            CHECK(kept == !dominated);
        }
        for (std::size_t i = 0; i < result.size(); ++i)
            for (std::size_t j = 0; j < result.size(); ++j)
                if (i != j) CHECK_FALSE(result[i].below(result[j]));
    }
}

TEST_CASE("CreditAntichain covers the upward closure")
{
    const CreditAntichain a({{1, 0}, {0, 3}, {2, 2}});
    CHECK(a.elements() == Vs{{0, 3}, {1, 0}});
    CHECK(a.covers({1, 0}));
    CHECK(a.covers({5, 5}));
    CHECK(a.covers({0, 4}));
    CHECK_FALSE(a.covers({0, 2}));
    CHECK_FALSE(CreditAntichain().covers({9, 9}));
    CHECK(to_string(a) == "{(0,3),(1,0)}");
}

TEST_CASE("cpre at an environment state takes the component-wise max")
{
    const GameStructure g = two_way(2);
    const StateAntichains u{CreditAntichain({{0, 0}}), CreditAntichain({{1, 0}}), CreditAntichain({{0, 1}})};
    const CpreResult r = cpre(g, u, 10);
    CHECK(r.next[0].elements() == Vs{{1, 1}});
    CHECK(r.ceiling_exceeded.empty());
}

TEST_CASE("cpre at a system state takes the union")
{
    const GameStructure g = two_way(1);
    const StateAntichains u{CreditAntichain({{0, 0}}), CreditAntichain({{1, 0}}), CreditAntichain({{0, 1}})};
    CHECK(cpre(g, u, 10).next[0].elements() == Vs{{0, 1}, {1, 0}});
}

TEST_CASE("cpre on a negative self-loop")
{
    const GameStructure g = gdl::parse_game("game g\ndimensions 1\nobjective energy dim=1\n"
                                            "state s owner=1 init\nedge s -> s weights=(-1)\n");
    const CpreResult r = cpre(g, {CreditAntichain(Vs{{0}})}, 10);
    CHECK(r.next[0].elements() == Vs{{1}});
    const CpreResult capped = cpre(g, {CreditAntichain(Vs{{10}})}, 10);
    CHECK(capped.next[0].empty());
    CHECK(capped.ceiling_exceeded == std::vector<StateIndex>{0});
}

TEST_CASE("energy_fixpoint examples")
{
    const GameStructure chain = gdl::parse_game("game g\ndimensions 1\nobjective energy dim=1\n"
                                                "state s0 owner=1 init\nstate s1 owner=1\n"
                                                "edge s0 -> s1 weights=(-3)\nedge s1 -> s1 weights=(1)\n");
    const EnergyFixpoint f = energy_fixpoint(chain);
    CHECK(f.status == FixpointStatus::Exact);
    CHECK(f.credits[0].elements() == Vs{{3}});
    CHECK(f.credits[1].elements() == Vs{{0}});

    const auto brute = clamped_minimal_credits(chain, 5);
    CHECK(brute[0] == Vs{{3}});
    CHECK(brute[1] == Vs{{0}});

    const GameStructure up = gdl::parse_game("game g\ndimensions 1\nobjective energy dim=1\n"
                                             "state a owner=1 init\nedge a -> a weights=(1)\n");
    CHECK(energy_fixpoint(up).credits[0].elements() == Vs{{0}});

    const GameStructure down = gdl::parse_game("game g\ndimensions 1\nobjective energy dim=1\n"
                                               "state a owner=1 init\nedge a -> a weights=(-1)\n");
    const EnergyFixpoint lost = energy_fixpoint(down);
    CHECK(lost.credits[0].empty());
    CHECK_FALSE(lost.winning_at(0));
}

TEST_CASE("default ceiling")
{
    const GameStructure chain = gdl::parse_game("game g\ndimensions 1\nobjective energy dim=1\n"
                                                "state s0 owner=1 init\nstate s1 owner=1\n"
                                                "edge s0 -> s1 weights=(-3)\nedge s1 -> s1 weights=(1)\n");
    CHECK(default_ceiling(chain) == 3);
    CHECK(energy_fixpoint(chain).ceiling == 3);
}

TEST_CASE("energy_fixpoint matches the clamped level-game oracle")
{
    Rng rng(424242);
    int nonempty = 0;
    for (int round = 0; round < 250; ++round) {
        RandomGameParams p;
        p.max_states = 5;
        p.dimensions = 1 + round % 2;
        p.max_weight = 2;
        const GameStructure g = random_game(rng, p);
        const EnergyFixpoint f = energy_fixpoint(g, 10);
        const auto oracle = clamped_minimal_credits(g, 10);
        for (StateIndex s = 0; s < g.state_count(); ++s) {
            REQUIRE(f.credits[s].elements() == oracle[s]);
            if (!oracle[s].empty()) ++nonempty;
        }
    }
    CHECK(nonempty > 100);
}

TEST_CASE("energy_fixpoint is independent of declaration order")
{
    Rng rng(8);
    for (int round = 0; round < 100; ++round) {
        RandomGameParams p;
        p.max_states = 5;
        p.dimensions = 2;
        const GameStructure g = random_game(rng, p);
        RawGame raw = to_raw(g);
        std::reverse(raw.states.begin(), raw.states.end());
        std::shuffle(raw.edges.begin(), raw.edges.end(), rng);
        const GameStructure h = validate_game(raw);
        const EnergyFixpoint a = energy_fixpoint(g, 8);
        const EnergyFixpoint b = energy_fixpoint(h, 8);
        for (StateIndex s = 0; s < g.state_count(); ++s)
            CHECK(a.credits[s] == b.credits[*h.find_state(g.state(s).id)]);
    }
}

TEST_CASE("Exact status with one dimension is stable under a larger ceiling")
{
    Rng rng(31);
    for (int round = 0; round < 200; ++round) {
        RandomGameParams p;
        p.max_states = 5;
        p.max_weight = 3;
        const GameStructure g = random_game(rng, p);
        const EnergyFixpoint f = energy_fixpoint(g);
        REQUIRE(f.status == FixpointStatus::Exact);
        const EnergyFixpoint wide = energy_fixpoint(g, f.ceiling * 3 + 5);
        for (StateIndex s = 0; s < g.state_count(); ++s) CHECK(f.credits[s] == wide.credits[s]);
    }
}
