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

#include <fstream>
#include <sstream>
#include <string>

#include "gamesmith/gdl.hpp"

namespace gamesmith::testing {

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string data_path(const std::string& name)
{
    return std::string(GAMESMITH_DATA_DIR) + "/" + name;
}

inline std::string test_data_path(const std::string& name)
{
    return std::string(GAMESMITH_TEST_DATA_DIR) + "/" + name;
}

inline std::string lawnmower_text()
{
    return read_text(data_path("lawnmower.game"));
}

inline GameStructure lawnmower()
{
    return gdl::parse_game(lawnmower_text());
}

inline StrategyDoc sample_strategy()
{
    return gdl::parse_strategy(read_text(data_path("lawnmower_sample.strategy")));
}

inline StrategyDoc test_strategy(const std::string& name)
{
    return gdl::parse_strategy(read_text(test_data_path(name)));
}

/// Replaces the first occurrence of `from`; throws when absent so that a
/// fixture drift does not silently weaken a test.
inline std::string replace_once(std::string text, const std::string& from, const std::string& to)
{
    const auto at = text.find(from);
    if (at == std::string::npos) throw std::runtime_error("fixture text not found: " + from);
    return text.replace(at, from.size(), to);
}

} // namespace gamesmith::testing
