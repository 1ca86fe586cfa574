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

#ifndef WPMCC_CLI_HPP_
#define WPMCC_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace wpmcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInfeasible = 2;

// `args` excludes the program name. Subcommands: static-local,
// static-offload, mode-select, sweep, dynamic.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Number formatting used for every value the CLI prints; round-trips
// doubles exactly.
std::string format_value(double v);

}  // namespace wpmcc::cli

#endif  // WPMCC_CLI_HPP_
