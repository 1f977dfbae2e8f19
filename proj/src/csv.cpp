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

#include "spinmap/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinmap {

std::string format_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot format a non-finite value");
  if (value == 0.0) return "0";  // also folds -0
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const ScenarioResult& result) {
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out << ',';
    out << result.columns[c];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

std::string to_csv(const ScenarioResult& result) {
  std::ostringstream s;
  write_csv(s, result);
  return s.str();
}

void write_csv_file(const std::filesystem::path& path, const ScenarioResult& result) {
  const std::string text = to_csv(result);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace spinmap
