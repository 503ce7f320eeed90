// Copyright 2026 The ars-ppl Authors
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

#ifndef ARS_TOOLS_CLI_HPP
#define ARS_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ars::cli {

/// Runs the `ars` command line with `args` (program name excluded).
/// Returns 0 on success, 1 on engine or I/O errors, 2 on usage errors and 3
/// when theorem2-check finds a mismatch.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ars::cli

#endif
