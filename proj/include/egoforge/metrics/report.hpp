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

#include <cstddef>
#include <map>
#include <string>

namespace egoforge::metrics {

// Controls rendering: fractions print as percentages with two decimals,
// displacements with two decimals, edit distances with three.
enum class MetricFamily { fraction, displacement, edit_distance };

struct MetricReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> breakdown;
  std::size_t count = 0;
  MetricFamily family = MetricFamily::fraction;
};

}  // namespace egoforge::metrics
