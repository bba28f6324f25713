// Copyright 2026 The ifsfit Authors
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


// The ifsfit command-line front end, callable in-process for testing.

#ifndef IFS_TOOLS_CLI_HPP
#define IFS_TOOLS_CLI_HPP

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifs::cli {

// Bad flags or flag combinations (exit 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data (exit 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericalFailure = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One number per line; '#' starts a comment, blank lines are skipped and a
// non-numeric first data line is taken as a header. Throws DataError naming
// the offending line, or when no value is found.
std::vector<double> read_sample_csv(std::istream& in, const std::string& name);

}  // namespace ifs::cli

#endif  // IFS_TOOLS_CLI_HPP
