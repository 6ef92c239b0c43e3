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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "egoforge/io/fixtures.hpp"
#include "egoforge/metrics/report.hpp"

namespace egoforge::io {

enum class Format { plain, csv, json };

std::optional<Format> format_from_name(std::string_view name);

// Fixed decimals per family: fractions as percentages with 2 decimals,
// displacements with 2, edit distances with 3.
std::string format_value(double value, metrics::MetricFamily family);

// Throws ParameterError on a non-finite value.
std::string render_reports(std::span<const metrics::MetricReport> reports, Format format);

// Published values are emitted verbatim; unreported cells render as "-" in
// the plain table and are omitted from csv and json.
std::string render_fixture(const ResultFixture& fixture, Format format);

}  // namespace egoforge::io
