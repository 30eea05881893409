// Copyright 2026 The stabforms Authors
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

#ifndef STABFORMS_JSON_IO_H
#define STABFORMS_JSON_IO_H

#include <json.hpp>

#include "stabforms/codedeform.h"
#include "stabforms/logical.h"
#include "stabforms/sim.h"
#include "stabforms/verify.h"

namespace stabforms {

using json = nlohmann::ordered_json;

// Tableau interchange form: {"n": ..., "rows": ["0110...", ...]} row-major.
json clifford_to_json(const CliffordOp& c);
CliffordOp clifford_from_json(const json& j);

json matrix_to_json(const BitMatrix& m);

// Code interchange form: {"n": ..., "k": ..., "C": tableau}.
json code_to_json(const EncodingSpec& spec);
EncodingSpec code_from_json(const json& j);

json specific_result_to_json(const SpecificResult& r);
json complete_result_to_json(const CompleteResult& r);
json general_form_to_json(const GeneralForm& g, const OutcomeMap& m);
json verdict_to_json(const ComparisonVerdict& v);
json logical_action_to_json(const LogicalActionResult& r);
json basis_to_json(const CommonSymplecticBasis& b);

}  // namespace stabforms

#endif  // STABFORMS_JSON_IO_H
