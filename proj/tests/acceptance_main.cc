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


#include <iostream>

#include "acceptance.h"

// Runs the acceptance suite with wall times; the exit status reflects the result.
int main() {
    covcert::acceptance::Options options;
    options.show_timings = true;
    const covcert::acceptance::Summary summary = covcert::acceptance::run_all(options, std::cout);
    return summary.failed == 0 ? 0 : 1;
}
