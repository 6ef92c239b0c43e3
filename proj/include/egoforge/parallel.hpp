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

namespace egoforge {

// Kernels that have an OpenMP path take an Execution argument; the serial
// path is the reference the parallel one is tested against. Both produce
// bit-identical results because every reduction happens in a fixed order
// after the parallel region.
enum class Execution { serial, parallel };

// Thread cap for parallel kernels: EGOFORGE_THREADS when set to a positive
// integer, otherwise the OpenMP default. Read once per process.
int thread_cap();

// Overrides the cap for the rest of the process (tests and the CLI use it).
void set_thread_cap(int threads);

// Number of threads a kernel should launch for the given policy.
inline int threads_for(Execution ex) { return ex == Execution::serial ? 1 : thread_cap(); }

}  // namespace egoforge
