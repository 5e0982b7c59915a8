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

#include <iosfwd>

namespace modpack {

inline constexpr const char* kWorkersEnv = "MODPACK_WORKERS";

/// Entry point of the modpack tool. Returns the process exit code: 0 on
/// success, 1 on I/O, parse, validation or verification failure, and the
/// argument parser's code for usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modpack
