// Copyright 2026 The RASE Authors
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

// Umbrella header for the randomize-shuffle-estimate aggregation library.

#pragma once

#include "rase/attack.hpp"      // IWYU pragma: export
#include "rase/config.hpp"      // IWYU pragma: export
#include "rase/errors.hpp"      // IWYU pragma: export
#include "rase/estimator.hpp"   // IWYU pragma: export
#include "rase/grouping.hpp"    // IWYU pragma: export
#include "rase/mallows.hpp"     // IWYU pragma: export
#include "rase/metrics.hpp"     // IWYU pragma: export
#include "rase/permutation.hpp" // IWYU pragma: export
#include "rase/pipeline.hpp"    // IWYU pragma: export
#include "rase/randomizer.hpp"  // IWYU pragma: export
#include "rase/report.hpp"      // IWYU pragma: export
#include "rase/rng.hpp"         // IWYU pragma: export
#include "rase/shuffler.hpp"    // IWYU pragma: export
#include "rase/trace.hpp"       // IWYU pragma: export
