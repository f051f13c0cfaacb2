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

#include "squint/sparse_ttd.hpp"

namespace squint
{
    SparseTtdBounds sparse_ttd_bounds(const Scenario &s, const WbbgSolution &solution)
    {
        SparseTtdBounds bounds;
        bounds.lower = sum_se_wbbg(s, solution);
        bounds.lower.architecture = Architecture::SparseTTD_lower;
        bounds.upper = sum_se_sparse_upper(s);
        return bounds;
    }

    SparseTtdBounds sparse_ttd_bounds(const Scenario &s, const WbbgOptions &opts)
    {
        const Scenario v = validate_scenario(s);
        return sparse_ttd_bounds(v, wbbg_optimize(v.array, v.grid, v.target.angle_rad, opts));
    }
}
