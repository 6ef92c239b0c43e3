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

#include "egoforge/toyheads/linear_head.hpp"

namespace egoforge::io {

// {"schema": "head/1", kind, in_dim, z, C_v, C_n, weights, bias}.
std::string dump_head(const toyheads::LinearHead& head);
toyheads::LinearHead parse_head(std::string_view text);

}  // namespace egoforge::io
