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

#ifndef SQUINT_CLI_HPP
#define SQUINT_CLI_HPP

#include "squint/cost.hpp"
#include "squint/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace squint::cli
{
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_config_error = 1;
    inline constexpr int exit_runtime_error = 2;

    // A run configuration: the scenario keys plus wbbg.*, cost.* and seed.
    struct RunConfig
    {
        Scenario scenario;
        WbbgOptions wbbg;
        AdvisorSettings advisor;

        // Text that fully determines the run; the manifest digest is taken over it.
        std::string canonical_text() const;
    };

    // Unknown keys are a ConfigError.
    RunConfig run_config_from(const KeyValueConfig &config);
    RunConfig load_run_config(const std::string &path);

    struct RunManifest
    {
        std::string command;
        std::string scenario_digest; // hex SHA-256 of RunConfig::canonical_text
        std::uint64_t seed = 0;
        std::string tool_version;
        std::string timestamp_utc; // ISO 8601
    };

    std::string sha256_hex(const std::string &data);
    std::string manifest_json(const RunManifest &manifest);
    std::string tool_version();

    // Inclusive linspace; steps == 0 is a ConfigError("empty grid").
    std::vector<double> bf_grid(double bf_min, double bf_max, std::size_t steps);

    // Entry point behind the squint binary. args excludes the program name.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
