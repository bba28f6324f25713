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

#ifndef IFS_ERRORS_HPP
#define IFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifs {

// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The sample carries too little information (all values tied, zero variance).
class DegenerateSample : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonInvertibleMap : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite objective or gradient during optimization.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Censoring or filtering removed every observation.
class NoData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model or configuration file.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ifs

#endif  // IFS_ERRORS_HPP
