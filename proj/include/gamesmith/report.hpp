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

// Text and JSON renderings of the results. The JSON documents follow
// docs/report.schema.json.

#include <string>

#include <json.hpp>

#include "gamesmith/synth.hpp"
#include "gamesmith/verify.hpp"

namespace gamesmith {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const CreditVector& c);
Json to_json(const CreditAntichain& a);
Json to_json(const Error& e);

Json check_json(const GameStructure& game);
std::string check_text(const GameStructure& game);

/// `timings` adds wall-clock figures, which makes the document
/// run-dependent.
Json synthesis_json(const GameStructure& game, const SynthesisResult& r, bool timings = false);
std::string synthesis_text(const GameStructure& game, const SynthesisResult& r, bool timings = false);

Json verification_json(const GameStructure& game, const VerificationReport& r);
std::string verification_text(const GameStructure& game, const VerificationReport& r);

/// "a/m0 -> b/m1", with the cycle in brackets: "a/m0 -> [b/m1 -> c/m0]".
std::string lasso_text(const Lasso& lasso, const std::vector<std::string>& labels);

} // namespace gamesmith
