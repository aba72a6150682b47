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

#include <optional>
#include <string_view>

namespace gamesmith {

/// Text of data/<name>.game compiled into the library.
std::optional<std::string_view> builtin_game(std::string_view name);

/// Text of data/<name>.strategy compiled into the library.
std::optional<std::string_view> builtin_strategy(std::string_view name);

} // namespace gamesmith
