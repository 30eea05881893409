// Copyright 2026 The stabforms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABFORMS_CLI_H
#define STABFORMS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace stabforms::cli {

/// Runs the command line tool. Exit codes: 0 success (or Equivalent / True),
/// 1 well-formed negative verdict, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabforms::cli

#endif  // STABFORMS_CLI_H
