/*
 * Copyright 2026 The ranklosslab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The ranklosslab command line tool.
//
//   ranklosslab gradcheck      [--seed N]
//   ranklosslab train          [--config PATH] [--seed N] [--out DIR]
//   ranklosslab counterexample [--seed N] [--out DIR]
//   ranklosslab bounds         [--seed N] [--out DIR]
//   ranklosslab bench          [--config PATH] [--seed N] [--out DIR]
//   ranklosslab sweep          [--config PATH] [--seed N] [--out DIR]
//
// Every subcommand also accepts --format csv and --omit-timing, which writes
// wall-clock columns as 0 so that outputs are byte-identical across runs.
// Exit status: 0 success, 1 validation error or failed check, 2 I/O error.

#ifndef RANKLOSSLAB_TOOLS_CLI_H_
#define RANKLOSSLAB_TOOLS_CLI_H_

#include <ostream>

namespace ranklosslab::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace ranklosslab::tools

#endif  // RANKLOSSLAB_TOOLS_CLI_H_
