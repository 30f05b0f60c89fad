// Copyright 2026 The QID Simulator Authors
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

// Locale-independent text output with a fixed 17 significant digits per number.

#ifndef QID_CORE_FORMAT_HPP
#define QID_CORE_FORMAT_HPP

#include <string>

#include "json.hpp"

namespace qid {

/// Shortest "%.17g"-equivalent rendering; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// Serializes `value` with every floating-point number printed through format_double
/// (non-finite numbers become null). Object keys keep insertion order.
std::string dump_json(const nlohmann::ordered_json &value, int indent = 2);

}  // namespace qid

#endif
