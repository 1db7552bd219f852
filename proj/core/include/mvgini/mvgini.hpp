// Copyright 2026 The mvgini Authors
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

#ifndef MVGINI__MVGINI_HPP_
#define MVGINI__MVGINI_HPP_

#include "mvgini/gini.hpp"
#include "mvgini/ingest.hpp"
#include "mvgini/linalg.hpp"
#include "mvgini/report.hpp"
#include "mvgini/sample.hpp"
#include "mvgini/synth.hpp"
#include "mvgini/types.hpp"
#include "mvgini/whitening.hpp"

#endif  // MVGINI__MVGINI_HPP_
