// Copyright 2026 The modpack Authors
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
#include <string>
#include <string_view>

#include "modpack/ansatz.hpp"

namespace modpack {

// Text is the line format documented in docs/formats.md; Json is the
// structured equivalent. Auto picks Json when the first non-blank byte is '{'.
enum class AnsatzFormat { Auto, Text, Json };

/// Throws ParseError (with line number) for malformed records and for
/// invariant violations such as out-of-range indices or duplicate ids.
Ansatz parse_ansatz(std::string_view source, AnsatzFormat format = AnsatzFormat::Auto);
Ansatz load_ansatz(const std::filesystem::path& path,
                   AnsatzFormat format = AnsatzFormat::Auto);

std::string serialize_ansatz(const Ansatz& a, AnsatzFormat format = AnsatzFormat::Text);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace modpack
