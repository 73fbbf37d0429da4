// Copyright 2026 The kpzlab Authors.
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

#ifndef KPZLAB_HARNESS_HPP
#define KPZLAB_HARNESS_HPP

#include "kpzlab/harness/config.hpp"
#include "kpzlab/harness/criteria.hpp"
#include "kpzlab/harness/experiments.hpp"
#include "kpzlab/harness/report.hpp"
#include "kpzlab/harness/runner.hpp"
#include "kpzlab/harness/selftest.hpp"
#include "kpzlab/harness/table.hpp"

#endif  // KPZLAB_HARNESS_HPP
