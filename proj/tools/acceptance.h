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


#ifndef COVCERT_TOOLS_ACCEPTANCE_H
#define COVCERT_TOOLS_ACCEPTANCE_H

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace covcert::acceptance {

struct Options {
    /// Base seed; every sampled check derives its generator from it.
    std::uint64_t seed = 0;
    /// Append wall times to each line (makes the output run-dependent).
    bool show_timings = false;
    /// Criterion ids to run; empty runs all.
    std::vector<std::string> only;
};

struct Criterion {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct Summary {
    std::vector<Criterion> rows;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

/// Runs every acceptance criterion in order, printing one line per criterion
/// as it completes and a closing count.
Summary run_all(const Options &options, std::ostream &out);

}  // namespace covcert::acceptance

#endif
