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

#ifndef MIXGRAN_TOOLS_COMMANDS_H_
#define MIXGRAN_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mixgran::cli {

// Runs the command line `args` (args[0] is the program name). Data goes to
// `out`, diagnostics to `err`. Returns the process exit status: 0 on
// success, 2 on any usage or pipeline error.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace mixgran::cli

#endif  // MIXGRAN_TOOLS_COMMANDS_H_
