// Copyright 2026 The mixgran Authors.
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

#ifndef MIXGRAN_UTF8_H_
#define MIXGRAN_UTF8_H_

#include <optional>
#include <string>
#include <string_view>

namespace mixgran::utf8 {

// Strict decoding: returns nullopt on any ill-formed sequence, including
// overlongs and encoded surrogates.
std::optional<std::u32string> Decode(std::string_view bytes);

std::string Encode(std::u32string_view chars);
void Append(char32_t c, std::string* out);

// Number of scalar values, assuming well-formed input.
std::size_t CharCount(std::string_view bytes);

}  // namespace mixgran::utf8

#endif  // MIXGRAN_UTF8_H_
