// Copyright 2026 The cointurn Authors.
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

#ifndef COINTURN_CLI_HPP_
#define COINTURN_CLI_HPP_

#include <ostream>
#include <span>
#include <string>

namespace cointurn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;

// Environment variable holding the default --seed (decimal, unsigned 64-bit).
inline constexpr const char* kSeedEnvironmentVariable = "COINTURN_SEED";

// Runs one subcommand. `args` excludes the program name. Reports go to `out`
// (or --output), diagnostics to `err`.
//
// Exit codes: 0 success or verify pass, 1 verify fail, 2 usage or invalid
// input, 3 failure while computing or writing the report.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cointurn

#endif  // COINTURN_CLI_HPP_
