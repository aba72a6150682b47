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

#include "gamesmith/errors.hpp"

namespace gamesmith {

namespace {

std::string with_span(const std::string& message, const std::optional<SourceSpan>& span)
{
    if (!span) return message;
    return to_string(*span) + ": " + message;
}

} // namespace

std::string to_string(const SourceSpan& span)
{
    return std::to_string(span.line) + ":" + std::to_string(span.column);
}

Error::Error(const std::string& message, std::optional<SourceSpan> span)
    : std::runtime_error(with_span(message, span)), span_(span), detail_(message)
{
}

SyntaxError::SyntaxError(SourceSpan span, std::string expected, const std::string& found)
    : Error("syntax error: expected " + expected + ", found " + found, span), expected_(std::move(expected))
{
}

const char* to_string(GameErrorKind kind)
{
    switch (kind) {
    case GameErrorKind::NonBlockingViolation: return "NonBlockingViolation";
    case GameErrorKind::DanglingEdge: return "DanglingEdge";
    case GameErrorKind::DuplicateState: return "DuplicateState";
    case GameErrorKind::DuplicateEdge: return "DuplicateEdge";
    case GameErrorKind::DimensionMismatch: return "DimensionMismatch";
    case GameErrorKind::BadInitial: return "BadInitial";
    case GameErrorKind::BadObjective: return "BadObjective";
    case GameErrorKind::BadDimensions: return "BadDimensions";
    }
    return "?";
}

GameError::GameError(GameErrorKind kind, const std::string& message, std::optional<SourceSpan> span)
    : Error(std::string(to_string(kind)) + ": " + message, span), kind_(kind)
{
}

const char* to_string(StrategyErrorKind kind)
{
    switch (kind) {
    case StrategyErrorKind::DuplicateMove: return "DuplicateMove";
    case StrategyErrorKind::DuplicateUpdate: return "DuplicateUpdate";
    case StrategyErrorKind::DuplicateMemory: return "DuplicateMemory";
    case StrategyErrorKind::MissingInitialMemory: return "MissingInitialMemory";
    case StrategyErrorKind::UnknownMemory: return "UnknownMemory";
    }
    return "?";
}

StrategyError::StrategyError(StrategyErrorKind kind, const std::string& message, std::optional<SourceSpan> span)
    : Error(std::string(to_string(kind)) + ": " + message, span), kind_(kind)
{
}

EnergyUnderflow::EnergyUnderflow(std::size_t dimension)
    : Error("EnergyUnderflow: dim " + std::to_string(dimension + 1) + " would drop below zero"),
      dimension_(dimension)
{
}

const char* to_string(ProductErrorKind kind)
{
    switch (kind) {
    case ProductErrorKind::UndefinedMove: return "UndefinedMove";
    case ProductErrorKind::UndefinedUpdate: return "UndefinedUpdate";
    case ProductErrorKind::UnknownState: return "UnknownState";
    case ProductErrorKind::IllegalStrategyMove: return "IllegalStrategyMove";
    case ProductErrorKind::BadCredit: return "BadCredit";
    }
    return "?";
}

ProductError::ProductError(ProductErrorKind kind, const std::string& message, std::vector<std::string> path)
    : Error(std::string(to_string(kind)) + ": " + message), kind_(kind), path_(std::move(path))
{
}

ArenaTooLarge::ArenaTooLarge(std::size_t required, std::size_t limit)
    : Error("ArenaTooLarge: " + std::to_string(required) + " nodes exceed the limit of " + std::to_string(limit)),
      required_(required), limit_(limit)
{
}

const char* to_string(SessionErrorKind kind)
{
    switch (kind) {
    case SessionErrorKind::IllegalMove: return "IllegalMove";
    case SessionErrorKind::WrongTurn: return "WrongTurn";
    case SessionErrorKind::NoController: return "NoController";
    case SessionErrorKind::BadCredit: return "BadCredit";
    case SessionErrorKind::ScriptExhausted: return "ScriptExhausted";
    case SessionErrorKind::ScriptIllegal: return "ScriptIllegal";
    case SessionErrorKind::NothingToUndo: return "NothingToUndo";
    }
    return "?";
}

SessionError::SessionError(SessionErrorKind kind, const std::string& message)
    : Error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

} // namespace gamesmith
