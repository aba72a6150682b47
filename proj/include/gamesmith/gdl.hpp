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

// Line-oriented text formats for games and strategies.
//
// Game:
//   game <id>
//   dimensions <k> [names=<id,...>]
//   objective energy dim=<i>
//   objective meanpayoff dim=<i> threshold=<p>/<q>
//   objective buchi states=<id,...>
//   objective parity
//   state <id> owner=<1|2> [priority=<n>] [init]
//   edge <src> -> <dst> weights=(<w1,...,wk>) [label="<text>"]
//
// Strategy:
//   strategy <id> for <game-id>
//   memory <id> [init]
//   move <mem> <state> -> <dst-state>
//   update <mem> <src> -> <dst> => <mem'>
//
// Identifiers match [a-z_][a-z0-9_]*, `#` starts a comment, blank lines are
// ignored.

#include <string>
#include <string_view>
#include <vector>

#include "gamesmith/model.hpp"

namespace gamesmith::gdl {

enum class TokenKind { Identifier, Integer, String, Arrow, FatArrow, Equals, LParen, RParen, Comma, Slash, EndOfLine };

struct Token
{
    TokenKind kind;
    std::string text;
    SourceSpan span;
};

/// Splits the text into lines of tokens; comment-only and blank lines are
/// dropped. Each line is terminated by an EndOfLine token.
std::vector<std::vector<Token>> tokenize(std::string_view text);

/// Parses and validates a game. Throws SyntaxError or GameError, both
/// carrying a span inside `text`.
GameStructure parse_game(std::string_view text);

/// Canonical text: header, objectives, states in declaration order, edges
/// sorted by (src, dst).
std::string serialize_game(const GameStructure& game);

/// Throws SyntaxError or StrategyError. State names are resolved later,
/// against a game.
StrategyDoc parse_strategy(std::string_view text);

/// Canonical text: memories in declaration order, then moves and updates
/// grouped by memory.
std::string serialize_strategy(const StrategyDoc& strategy);

} // namespace gamesmith::gdl
