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


#ifndef COVCERT_JSON_IO_H
#define COVCERT_JSON_IO_H

#include <string>

#include <json.hpp>

#include "covcert/asymmetry.h"
#include "covcert/certifier.h"
#include "covcert/channels.h"
#include "covcert/wstate.h"

namespace covcert {

using Json = nlohmann::ordered_json;

/// Raised on malformed JSON input.
class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits; non-finite values become null.
Json number_json(double v);

/// Matrix as an array of rows; each entry is a number or [re, im].
ComplexMatrix matrix_from_json(const Json &j);
Json matrix_to_json(const ComplexMatrix &m);
/// Vector as an array of numbers or [re, im] pairs.
ComplexVector vector_from_json(const Json &j);

/// {"kraus": [...], "in_shape": [...], "out_shape": [...]}. Missing shapes
/// default to a single factor.
QuantumChannel channel_from_json(const Json &j);
Json channel_to_json(const QuantumChannel &ch);

/// {"labels": [...], "unitaries": [...]} for the same action on both spaces,
/// or {"unitaries_in": [...], "unitaries_out": [...]}.
GroupRep rep_from_json(const Json &j);

/// A state is a matrix, or {"ket": [...]} for a pure state (normalized on read).
ComplexMatrix state_from_json(const Json &j);

/// {"inputs": [...], "targets": [...], "rep": {...}, "epsilon": x}.
ConversionQuery query_from_json(const Json &j);

Json report_to_json(const CertReport &r);
Json verdict_to_json(const ConversionVerdict &v);
Json hmin_to_json(const MinEntropyResult &r);
Json stats_to_json(const SolverStats &s);

/// Parses a file, raising FormatError with the path on failure.
Json read_json_file(const std::string &path);

}  // namespace covcert

#endif
