// Copyright 2026 The qbaker Authors.
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


/**
 * @file
 * Command-line front end. Every subcommand writes CSV (with '#' metadata
 * lines) to stdout or to --out.
 *
 * Exit codes: 0 success, 2 argument error or unknown subcommand, 3 capacity
 * error, 1 any other failure.
 */

#pragma once

#include <iosfwd>

namespace qbaker {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitCapacity = 3;

int cli_dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Version string baked in at build time.
const char *version_string();

}  // namespace qbaker
