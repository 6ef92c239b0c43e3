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

#include "egoforge/io/head.hpp"

#include "strict_json.hpp"

namespace egoforge::io {

namespace {

constexpr const char* kHeadSchema = "head/1";

const char* kind_name(toyheads::HeadKind k) {
  switch (k) {
    case toyheads::HeadKind::regression_20: return "regression_20";
    case toyheads::HeadKind::classifier_joint: return "classifier_joint";
    case toyheads::HeadKind::classifier_factorized: return "classifier_factorized";
  }
  return "";
}

std::vector<double> numbers(const detail::json& arr, const std::string& where) {
  if (!arr.is_array()) detail::ObjectReader::fail(where, "expected an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(detail::ObjectReader::as_number(arr[i], detail::index_path(where, i)));
  }
  return out;
}

}  // namespace

std::string dump_head(const toyheads::LinearHead& head) {
  detail::json doc{{"schema", kHeadSchema},
                   {"kind", kind_name(head.kind())},
                   {"in_dim", head.in_dim()},
                   {"z", head.z()},
                   {"C_v", head.vocab().num_verbs},
                   {"C_n", head.vocab().num_nouns},
                   {"weights", std::vector<double>(head.weights().begin(), head.weights().end())},
                   {"bias", std::vector<double>(head.bias().begin(), head.bias().end())}};
  return doc.dump() + "\n";
}

toyheads::LinearHead parse_head(std::string_view text) {
  using detail::ObjectReader;
  const auto doc = detail::parse_json(text);
  std::vector<std::string> warnings;
  ObjectReader r(doc, "", warnings);
  if (r.string("schema") != kHeadSchema) ObjectReader::fail("schema", "expected head/1");
  const auto kind = r.string("kind");
  toyheads::HeadKind k{};
  if (kind == "regression_20") {
    k = toyheads::HeadKind::regression_20;
  } else if (kind == "classifier_joint") {
    k = toyheads::HeadKind::classifier_joint;
  } else if (kind == "classifier_factorized") {
    k = toyheads::HeadKind::classifier_factorized;
  } else {
    ObjectReader::fail("kind", "unknown head kind " + kind);
  }
  const int in_dim = r.integer("in_dim");
  const int z = r.integer("z");
  const ActionVocabulary vocab{r.integer("C_v"), r.integer("C_n")};
  auto weights = numbers(r.required("weights"), "weights");
  auto bias = numbers(r.required("bias"), "bias");
  r.finish();
  try {
    return toyheads::LinearHead(k, in_dim, std::move(weights), std::move(bias), z, vocab);
  } catch (const ParameterError& e) {
    throw DataError(std::string("head: ") + e.what());
  }
}

}  // namespace egoforge::io
