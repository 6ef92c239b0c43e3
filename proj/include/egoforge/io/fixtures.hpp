// Copyright 2026 The egoforge Authors. All Rights Reserved.
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

#include <string>
#include <string_view>
#include <vector>

namespace egoforge::io {

// One published number. `value` is kept as the exact published string so
// rendering never reformats it (e.g. "8.5" stays "8.5").
struct FixtureRow {
  std::string method;
  std::string metric;
  std::string split;  // "validation" or "test"
  std::string value;
};

struct FixtureColumn {
  std::string split;
  std::string metric;
};

// A read-only published results table. Cells that were not reported have no
// row and render as "-".
struct ResultFixture {
  std::string table;
  std::vector<std::string> methods;     // display order
  std::vector<FixtureColumn> columns;   // display order
  std::vector<FixtureRow> rows;

  const FixtureRow* find(std::string_view method, const FixtureColumn& column) const;
};

const std::vector<ResultFixture>& bundled_fixtures();

// Throws ParameterError listing the bundled names when `name` is unknown.
const ResultFixture& find_fixture(std::string_view name);

}  // namespace egoforge::io
