// Copyright 2026 The ucit Authors
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

#ifndef UCIT_TESTS_SUBPROCESS_HPP
#define UCIT_TESTS_SUBPROCESS_HPP

#include <string>
#include <vector>

namespace testutil {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout, plus stderr when merge_stderr
};

/// Runs the ucit CLI (path baked in at build time) with the given arguments
/// and captures its output. `env` entries are NAME=VALUE prefixes.
RunResult run_cli(const std::vector<std::string>& args, bool merge_stderr = false,
                  const std::vector<std::string>& env = {});

/// Temp-directory path unique to this test process, created on first use.
std::string temp_path(const std::string& filename);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace testutil

#endif  // UCIT_TESTS_SUBPROCESS_HPP
