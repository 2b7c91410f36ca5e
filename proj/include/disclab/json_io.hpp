// Copyright 2026 The disclab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON interchange. Rationals are always strings ("a/b" or "a"); indices of
// rows, columns, goods, groups and agents are 0-based; colors are 1-based.
// Objects keep insertion order so output is byte-stable.

#include <json.hpp>

#include "disclab/asym_recursive.hpp"
#include "disclab/disc_engine.hpp"
#include "disclab/fairdiv.hpp"
#include "disclab/lb_constructions.hpp"
#include "disclab/matrix.hpp"

namespace disclab::json_io {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Rational& r);
/// Accepts a string or an integer.
[[nodiscard]] Rational rational_from_json(const Json& j);

[[nodiscard]] Json to_json(const RatMatrix& a);
[[nodiscard]] Json to_json(const SignMatrix& h);
[[nodiscard]] RatMatrix matrix_from_json(const Json& j);

[[nodiscard]] Json to_json(const WdiscResult& r);
[[nodiscard]] Json to_json(const OdiscResult& r);
[[nodiscard]] Json to_json(const StackedConstruction& c);
[[nodiscard]] Json to_json(const CertReport& r);
[[nodiscard]] Json to_json(const CertificateNode& node);

[[nodiscard]] Json to_json(const FairDivInstance& inst);
[[nodiscard]] FairDivInstance instance_from_json(const Json& j);
[[nodiscard]] Json to_json(const Allocation& a);
[[nodiscard]] Allocation allocation_from_json(const Json& j);

} // namespace disclab::json_io
