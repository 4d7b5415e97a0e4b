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

#ifndef COINTURN_JSON_OUTPUT_HPP_
#define COINTURN_JSON_OUTPUT_HPP_

#include <ostream>
#include <span>
#include <string>

#include "json.hpp"

#include "cointurn/classifier.hpp"
#include "cointurn/exact.hpp"
#include "cointurn/limit_laws.hpp"
#include "cointurn/montecarlo.hpp"

namespace cointurn {

using Json = nlohmann::ordered_json;

// Version of the field layout below. Bumped on any rename or removal.
inline constexpr int kSchemaVersion = 1;

// Shortest "%.17g" text; "nan", "inf" or "-inf" when not finite.
std::string format_double(double x);

// Pretty-printed with two-space indent. Doubles use 17 significant digits;
// NaN and infinities become null.
std::string dump_json(const Json& value);

// {"n", "support", "mass"}
Json to_json(const ExactLaw& law);
// {"n", "support" = 0..n-1 turn counts, "mass"}
Json to_json(const TurnCountLaw& law);

Json to_json(const ExponentFit& fit);
Json to_json(const SeriesEvidence& series);
Json to_json(const LlnEvidence& lln);
Json to_json(const CarlemanReport& carleman);
Json to_json(const Histogram& histogram);
Json to_json(const MomentCheck& check);

// Top-level reports; each starts with "schema".
Json to_json(const RegimeReport& report);
Json to_json(const SimulationSummary& summary);
Json to_json(const VerificationReport& report);

// Header x,f,F; one row per grid point.
void write_density_csv(std::ostream& out, const LimitLaw& law,
                       std::span<const double> grid);

// Header bin_left,bin_right,count,theoretical_density. The density column is
// the law's mass in the bin divided by the bin width, left empty without a
// law.
void write_histogram_csv(std::ostream& out, const Histogram& histogram,
                         const LimitLaw* law);

}  // namespace cointurn

#endif  // COINTURN_JSON_OUTPUT_HPP_
