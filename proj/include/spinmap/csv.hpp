// Copyright 2026 The spinmap Authors
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

#include <filesystem>
#include <ostream>
#include <string>

#include "spinmap/protocols.hpp"

namespace spinmap {

/// Shortest decimal text that parses back to the same double. Throws
/// std::domain_error for NaN and infinities.
std::string format_double(double value);

/// Header row, then one line per result row; `.` decimal separator, `\n`
/// line endings.
void write_csv(std::ostream& out, const ScenarioResult& result);
std::string to_csv(const ScenarioResult& result);

/// Writes through a temporary file in the same directory and renames it, so
/// a failed run never leaves a partial file behind.
void write_csv_file(const std::filesystem::path& path, const ScenarioResult& result);

}  // namespace spinmap
