// Copyright 2026 The covcert Authors
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


#ifndef COVCERT_TOOLS_CLI_H
#define COVCERT_TOOLS_CLI_H

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace covcert::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 3;

/// Runs one command line (args excludes the program name), writing results to
/// `out` (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "a:b:c" (inclusive, step c), "a:b" (step 1) or "a,b,c".
std::vector<std::size_t> parse_index_list(const std::string &text);

struct WStateSpec {
    std::size_t n = 0;
    std::size_t d_L = 0;
};
/// "n=100,dl=2".
WStateSpec parse_wstate(const std::string &text);

/// "inf" gives nullopt.
std::optional<std::size_t> parse_dl(const std::string &text);

}  // namespace covcert::cli

#endif
