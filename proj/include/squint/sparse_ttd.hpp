// SPDX-License-Identifier: Apache-2.0
//
// squintlab: beam squint analysis for wideband hybrid beamformers
// Copyright (C) 2026 The squintlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SQUINT_SPARSE_TTD_HPP
#define SQUINT_SPARSE_TTD_HPP

#include "squint/perf.hpp"

namespace squint
{
    // Interval that any Sparse-TTD design falls into. The lower end has no TTDs at all and is
    // the phase-only max-min design; the upper end gives every element a TTD cascaded with a
    // (still impaired) phase shifter.
    struct SparseTtdBounds
    {
        PerformanceResult lower;
        PerformanceResult upper;

        double lower_sum_se() const { return lower.sum_se; }
        double upper_sum_se() const { return upper.sum_se; }
    };

    SparseTtdBounds sparse_ttd_bounds(const Scenario &s, const WbbgSolution &solution);
    SparseTtdBounds sparse_ttd_bounds(const Scenario &s, const WbbgOptions &opts = {});
}

#endif
