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

#ifndef IFS_IFS_HPP
#define IFS_IFS_HPP

#include "ifs/affine_maps.hpp"
#include "ifs/baselines.hpp"
#include "ifs/errors.hpp"
#include "ifs/experiments.hpp"
#include "ifs/ifs_operator.hpp"
#include "ifs/inverse_problem.hpp"
#include "ifs/model_io.hpp"
#include "ifs/moments.hpp"
#include "ifs/sample.hpp"
#include "ifs/spectral.hpp"

#endif  // IFS_IFS_HPP
