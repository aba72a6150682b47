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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamesmith {

/// Position inside a source text. Lines and columns are 1-based, the byte
/// offset is 0-based.
struct SourceSpan
{
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

/// Base class of every error raised by the library. Errors coming from a
/// textual input carry the span of the offending token or line.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& message, std::optional<SourceSpan> span = std::nullopt);

    const std::optional<SourceSpan>& span() const noexcept { return span_; }
    /// Message without the span prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::optional<SourceSpan> span_;
    std::string detail_;
};

class SyntaxError : public Error
{
public:
    SyntaxError(SourceSpan span, std::string expected, const std::string& found);

    const std::string& expected() const noexcept { return expected_; }

private:
    std::string expected_;
};

enum class GameErrorKind {
    NonBlockingViolation,
    DanglingEdge,
    DuplicateState,
    DuplicateEdge,
    DimensionMismatch,
    BadInitial,
    BadObjective,
    BadDimensions,
};

const char* to_string(GameErrorKind kind);

/// Semantic error on a game description (raised by validate_game).
class GameError : public Error
{
public:
    GameError(GameErrorKind kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

    GameErrorKind kind() const noexcept { return kind_; }

private:
    GameErrorKind kind_;
};

enum class StrategyErrorKind {
    DuplicateMove,
    DuplicateUpdate,
    DuplicateMemory,
    MissingInitialMemory,
    UnknownMemory,
};

const char* to_string(StrategyErrorKind kind);

class StrategyError : public Error
{
public:
    StrategyError(StrategyErrorKind kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt);

    StrategyErrorKind kind() const noexcept { return kind_; }

private:
    StrategyErrorKind kind_;
};

class EnergyUnderflow : public Error
{
public:
    /// `dimension` is the 0-based position inside the weight slice.
    explicit EnergyUnderflow(std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

enum class ProductErrorKind {
    UndefinedMove,
    UndefinedUpdate,
    UnknownState,
    IllegalStrategyMove,
    BadCredit,
};

const char* to_string(ProductErrorKind kind);

/// Raised while composing a strategy with a game. `path` is the reachable
/// sequence of product nodes (rendered "state/memory") leading to the problem.
class ProductError : public Error
{
public:
    ProductError(ProductErrorKind kind, const std::string& message, std::vector<std::string> path = {});

    ProductErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& path() const noexcept { return path_; }

private:
    ProductErrorKind kind_;
    std::vector<std::string> path_;
};

class ArenaTooLarge : public Error
{
public:
    ArenaTooLarge(std::size_t required, std::size_t limit);

    std::size_t required() const noexcept { return required_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t required_;
    std::size_t limit_;
};

enum class SessionErrorKind {
    IllegalMove,
    WrongTurn,
    NoController,
    BadCredit,
    ScriptExhausted,
    ScriptIllegal,
    NothingToUndo,
};

const char* to_string(SessionErrorKind kind);

class SessionError : public Error
{
public:
    SessionError(SessionErrorKind kind, const std::string& message);

    SessionErrorKind kind() const noexcept { return kind_; }

private:
    SessionErrorKind kind_;
};

/// A broken internal invariant, e.g. a synthesized strategy that does not
/// verify.
class InternalError : public Error
{
public:
    using Error::Error;
};

} // namespace gamesmith
