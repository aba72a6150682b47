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

#include "gamesmith/gdl.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace gamesmith::gdl {

namespace {

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

const char* describe(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::String: return "string";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::FatArrow: return "'=>'";
    case TokenKind::Equals: return "'='";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Slash: return "'/'";
    case TokenKind::EndOfLine: return "end of line";
    }
    return "?";
}

std::string found_text(const Token& t)
{
    if (t.kind == TokenKind::EndOfLine) return "end of line";
    if (t.kind == TokenKind::String) return "string \"" + t.text + "\"";
    return "'" + t.text + "'";
}

class Lexer
{
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<std::vector<Token>> run()
    {
        std::vector<std::vector<Token>> lines;
        std::vector<Token> current;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                if (!current.empty()) {
                    current.push_back({TokenKind::EndOfLine, "", here()});
                    lines.push_back(std::move(current));
                    current.clear();
                }
                advance();
                ++line_;
                column_ = 1;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
                continue;
            }
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            current.push_back(next_token());
        }
        if (!current.empty()) {
            current.push_back({TokenKind::EndOfLine, "", here()});
            lines.push_back(std::move(current));
        }
        return lines;
    }

private:
    SourceSpan here() const { return {line_, column_, pos_}; }
    void advance()
    {
        ++pos_;
        ++column_;
    }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }

    Token next_token()
    {
        const SourceSpan start = here();
        const char c = peek();
        auto single = [&](TokenKind k) {
            advance();
            return Token{k, std::string(1, c), start};
        };
        auto pair = [&](TokenKind k, const char* text) {
            advance();
            advance();
            return Token{k, text, start};
        };
        if (is_ident_start(c)) {
            std::size_t begin = pos_;
            while (is_ident_char(peek())) advance();
            return {TokenKind::Identifier, std::string(text_.substr(begin, pos_ - begin)), start};
        }
        if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
            std::size_t begin = pos_;
            advance();
            while (is_digit(peek())) advance();
            return {TokenKind::Integer, std::string(text_.substr(begin, pos_ - begin)), start};
        }
        if (c == '-' && peek(1) == '>') return pair(TokenKind::Arrow, "->");
        if (c == '=' && peek(1) == '>') return pair(TokenKind::FatArrow, "=>");
        if (c == '=') return single(TokenKind::Equals);
        if (c == '(') return single(TokenKind::LParen);
        if (c == ')') return single(TokenKind::RParen);
        if (c == ',') return single(TokenKind::Comma);
        if (c == '/') return single(TokenKind::Slash);
        if (c == '"') return string_literal(start);
        std::string shown = (static_cast<unsigned char>(c) < 0x20) ? "control character" : "'" + std::string(1, c) + "'";
        throw SyntaxError(start, "a token", shown);
    }

    Token string_literal(SourceSpan start)
    {
        advance();
        std::string value;
        while (true) {
            const char c = peek();
            if (pos_ >= text_.size() || c == '\n') throw SyntaxError(here(), "closing '\"'", "end of line");
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                const char e = peek(1);
                if (e != '"' && e != '\\') throw SyntaxError(here(), "escape \\\" or \\\\", "'\\" + std::string(1, e) + "'");
                value += e;
                advance();
                advance();
                continue;
            }
            value += c;
            advance();
        }
        return {TokenKind::String, value, start};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

/// One-token-lookahead cursor over a single line.
class LineCursor
{
public:
    explicit LineCursor(const std::vector<Token>& tokens) : tokens_(tokens) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& first() const { return tokens_.front(); }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool at_word(std::string_view w) const { return at(TokenKind::Identifier) && peek().text == w; }

    const Token& expect(TokenKind k, const std::string& what = "")
    {
        if (!at(k)) throw SyntaxError(peek().span, what.empty() ? describe(k) : what, found_text(peek()));
        return tokens_[pos_++];
    }
    const Token& expect_word(std::string_view w)
    {
        if (!at_word(w)) throw SyntaxError(peek().span, "'" + std::string(w) + "'", found_text(peek()));
        return tokens_[pos_++];
    }
    std::string identifier(const std::string& what) { return expect(TokenKind::Identifier, what).text; }

    std::int64_t integer(const std::string& what)
    {
        const Token& t = expect(TokenKind::Integer, what);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
            throw SyntaxError(t.span, what + " within 64-bit range", "'" + t.text + "'");
        return value;
    }
    std::int64_t natural(const std::string& what)
    {
        const Token& t = peek();
        std::int64_t v = integer(what);
        if (v < 0) throw SyntaxError(t.span, "non-negative " + what, "'" + t.text + "'");
        return v;
    }

    /// `key=` prefix of an attribute.
    void attribute(std::string_view key)
    {
        expect_word(key);
        expect(TokenKind::Equals);
    }

    std::vector<std::string> identifier_list(const std::string& what)
    {
        std::vector<std::string> out{identifier(what)};
        while (at(TokenKind::Comma)) {
            expect(TokenKind::Comma);
            out.push_back(identifier(what));
        }
        return out;
    }

    void end() { expect(TokenKind::EndOfLine); }

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
};

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::vector<std::vector<Token>> tokenize(std::string_view text)
{
    return Lexer(text).run();
}

GameStructure parse_game(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty()) throw SyntaxError({1, 1, 0}, "'game'", "end of input");

    RawGame raw;
    bool have_dimensions = false;
    std::optional<SourceSpan> header_span;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineCursor cur(lines[i]);
        if (i == 0) {
            header_span = cur.expect_word("game").span;
            raw.name = cur.identifier("game name");
            cur.end();
            continue;
        }
        const Token& head = cur.expect(TokenKind::Identifier, "directive");
        if (head.text == "dimensions") {
            if (have_dimensions) throw SyntaxError(head.span, "a single 'dimensions' line", "second 'dimensions'");
            have_dimensions = true;
            raw.dimensions_span = head.span;
            const std::int64_t k = cur.natural("dimension count");
            raw.dimensions = static_cast<std::size_t>(k);
            if (cur.at_word("names")) {
                cur.attribute("names");
                raw.dimension_names = cur.identifier_list("dimension name");
            }
            cur.end();
        } else if (head.text == "objective") {
            RawGame::RawObjective obj;
            obj.span = head.span;
            using OK = RawGame::RawObjective::Kind;
            const Token& kind = cur.expect(TokenKind::Identifier, "objective kind");
            if (kind.text == "energy") {
                obj.kind = OK::Energy;
                cur.attribute("dim");
                obj.dim = static_cast<std::size_t>(cur.natural("dimension index"));
            } else if (kind.text == "meanpayoff") {
                obj.kind = OK::MeanPayoff;
                cur.attribute("dim");
                obj.dim = static_cast<std::size_t>(cur.natural("dimension index"));
                cur.attribute("threshold");
                obj.threshold.num = cur.integer("threshold numerator");
                cur.expect(TokenKind::Slash, "'/' in threshold");
                const Token& den_tok = cur.peek();
                obj.threshold.den = cur.integer("threshold denominator");
                if (obj.threshold.den <= 0) throw SyntaxError(den_tok.span, "positive denominator", "'" + den_tok.text + "'");
            } else if (kind.text == "buchi") {
                obj.kind = OK::Buchi;
                cur.attribute("states");
                obj.states = cur.identifier_list("state id");
            } else if (kind.text == "parity") {
                obj.kind = OK::Parity;
            } else {
                throw SyntaxError(kind.span, "energy, meanpayoff, buchi or parity", found_text(kind));
            }
            cur.end();
            raw.objectives.push_back(std::move(obj));
        } else if (head.text == "state") {
            RawGame::RawState st;
            st.span = head.span;
            st.id = cur.identifier("state id");
            cur.attribute("owner");
            const Token& owner = cur.peek();
            const std::int64_t o = cur.integer("owner 1 or 2");
            if (o != 1 && o != 2) throw SyntaxError(owner.span, "owner 1 or 2", "'" + owner.text + "'");
            st.owner = static_cast<int>(o);
            if (cur.at_word("priority")) {
                cur.attribute("priority");
                const Token& pt = cur.peek();
                const std::int64_t p = cur.natural("priority");
                if (p > 1'000'000) throw SyntaxError(pt.span, "priority at most 1000000", "'" + pt.text + "'");
                st.priority = static_cast<std::uint32_t>(p);
            }
            if (cur.at_word("init")) {
                cur.expect_word("init");
                st.initial = true;
            }
            cur.end();
            raw.states.push_back(std::move(st));
        } else if (head.text == "edge") {
            RawGame::RawEdge e;
            e.span = head.span;
            e.src = cur.identifier("source state");
            cur.expect(TokenKind::Arrow);
            e.dst = cur.identifier("destination state");
            cur.attribute("weights");
            cur.expect(TokenKind::LParen);
            e.weights.push_back(cur.integer("weight"));
            while (cur.at(TokenKind::Comma)) {
                cur.expect(TokenKind::Comma);
                e.weights.push_back(cur.integer("weight"));
            }
            cur.expect(TokenKind::RParen, "',' or ')'");
            if (cur.at_word("label")) {
                cur.attribute("label");
                e.label = cur.expect(TokenKind::String, "quoted label").text;
            }
            cur.end();
            raw.edges.push_back(std::move(e));
        } else if (head.text == "game") {
            throw SyntaxError(head.span, "a single 'game' line", "second 'game'");
        } else {
            throw SyntaxError(head.span, "dimensions, objective, state or edge", found_text(head));
        }
    }
    if (!have_dimensions) throw GameError(GameErrorKind::BadDimensions, "missing 'dimensions' line", header_span);
    raw.name_span = header_span;
    return validate_game(raw);
}

std::string serialize_game(const GameStructure& game)
{
    std::ostringstream out;
    out << "game " << game.name() << '\n';
    out << "dimensions " << game.dimensions();
    if (!game.dimension_names().empty()) {
        out << " names=";
        for (std::size_t i = 0; i < game.dimension_names().size(); ++i) out << (i ? "," : "") << game.dimension_names()[i];
    }
    out << '\n';
    for (const auto& o : to_raw(game).objectives) {
        using OK = RawGame::RawObjective::Kind;
        switch (o.kind) {
        case OK::Energy: out << "objective energy dim=" << o.dim << '\n'; break;
        case OK::MeanPayoff:
            out << "objective meanpayoff dim=" << o.dim << " threshold=" << o.threshold.num << '/' << o.threshold.den
                << '\n';
            break;
        case OK::Buchi:
            out << "objective buchi states=";
            for (std::size_t i = 0; i < o.states.size(); ++i) out << (i ? "," : "") << o.states[i];
            out << '\n';
            break;
        case OK::Parity: out << "objective parity\n"; break;
        }
    }
    for (StateIndex s = 0; s < game.state_count(); ++s) {
        const State& st = game.state(s);
        out << "state " << st.id << " owner=" << (st.owner == Player::System ? 1 : 2);
        if (st.priority != 0) out << " priority=" << st.priority;
        if (s == game.initial()) out << " init";
        out << '\n';
    }
    for (const Edge& e : game.edges()) {
        out << "edge " << game.state(e.src).id << " -> " << game.state(e.dst).id << " weights=(";
        for (std::size_t i = 0; i < e.weights.size(); ++i) out << (i ? "," : "") << e.weights[i];
        out << ')';
        if (!e.label.empty()) out << " label=" << quote(e.label);
        out << '\n';
    }
    return out.str();
}

StrategyDoc parse_strategy(std::string_view text)
{
    const auto lines = tokenize(text);
    if (lines.empty()) throw SyntaxError({1, 1, 0}, "'strategy'", "end of input");

    using K = StrategyErrorKind;
    StrategyDoc doc;
    std::optional<std::size_t> initial;
    SourceSpan header_span;
    auto memory_ref = [&](LineCursor& cur) {
        const Token& t = cur.expect(TokenKind::Identifier, "memory id");
        if (!doc.find_memory(t.text)) throw StrategyError(K::UnknownMemory, "memory '" + t.text + "' is not declared", t.span);
        return t.text;
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineCursor cur(lines[i]);
        if (i == 0) {
            header_span = cur.expect_word("strategy").span;
            doc.name = cur.identifier("strategy name");
            cur.expect_word("for");
            doc.game = cur.identifier("game name");
            cur.end();
            continue;
        }
        const Token& head = cur.expect(TokenKind::Identifier, "directive");
        if (head.text == "memory") {
            const Token& id = cur.expect(TokenKind::Identifier, "memory id");
            if (doc.find_memory(id.text))
                throw StrategyError(K::DuplicateMemory, "memory '" + id.text + "' declared twice", id.span);
            doc.memories.push_back(id.text);
            if (cur.at_word("init")) {
                const Token& init = cur.expect_word("init");
                if (initial) throw StrategyError(K::DuplicateMemory, "second initial memory '" + id.text + "'", init.span);
                initial = doc.memories.size() - 1;
            }
            cur.end();
        } else if (head.text == "move") {
            std::string mem = memory_ref(cur);
            std::string state = cur.identifier("state id");
            cur.expect(TokenKind::Arrow);
            std::string dst = cur.identifier("destination state");
            cur.end();
            if (!doc.moves.emplace(std::pair{mem, state}, dst).second)
                throw StrategyError(K::DuplicateMove, "second move for (" + mem + ", " + state + ")", head.span);
        } else if (head.text == "update") {
            std::string mem = memory_ref(cur);
            std::string src = cur.identifier("source state");
            cur.expect(TokenKind::Arrow);
            std::string dst = cur.identifier("destination state");
            cur.expect(TokenKind::FatArrow);
            std::string next = memory_ref(cur);
            cur.end();
            if (!doc.updates.emplace(std::tuple{mem, src, dst}, next).second)
                throw StrategyError(K::DuplicateUpdate, "second update for (" + mem + ", " + src + " -> " + dst + ")",
                                    head.span);
        } else if (head.text == "strategy") {
            throw SyntaxError(head.span, "a single 'strategy' line", "second 'strategy'");
        } else {
            throw SyntaxError(head.span, "memory, move or update", found_text(head));
        }
    }
    if (!initial) throw StrategyError(K::MissingInitialMemory, "no memory is marked init", header_span);
    doc.initial_memory = *initial;
    return doc;
}

std::string serialize_strategy(const StrategyDoc& s)
{
    std::ostringstream out;
    out << "strategy " << s.name << " for " << s.game << '\n';
    for (std::size_t m = 0; m < s.memories.size(); ++m)
        out << "memory " << s.memories[m] << (m == s.initial_memory ? " init" : "") << '\n';
    std::map<std::string_view, std::size_t> order;
    for (std::size_t m = 0; m < s.memories.size(); ++m) order.emplace(s.memories[m], m);
    std::vector<std::pair<std::size_t, std::string>> lines;
    for (const auto& [key, dst] : s.moves)
        lines.emplace_back(order.at(key.first), "move " + key.first + ' ' + key.second + " -> " + dst);
    std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& l : lines) out << l.second << '\n';
    lines.clear();
    for (const auto& [key, next] : s.updates)
        lines.emplace_back(order.at(std::get<0>(key)), "update " + std::get<0>(key) + ' ' + std::get<1>(key) + " -> " +
                                                           std::get<2>(key) + " => " + next);
    std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& l : lines) out << l.second << '\n';
    return out.str();
}

} // namespace gamesmith::gdl
