// Copyright 2026 The WPMCC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Diagnostics on standard error. The level comes from the WPMCC_LOG
// environment variable (error, warn, info, debug); default warn.

#ifndef WPMCC_LOG_HPP_
#define WPMCC_LOG_HPP_

#include <optional>
#include <string_view>

#include <spdlog/logger.h>

namespace wpmcc::log {

enum class Level { kError, kWarn, kInfo, kDebug };

std::optional<Level> parse_level(std::string_view name);

// Shared stderr logger, created on first use.
spdlog::logger& logger();

// Overrides the environment-derived level.
void set_level(Level level);

}  // namespace wpmcc::log

#endif  // WPMCC_LOG_HPP_
