// Copyright 2026 The irwal Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irwal/config.hpp"
#include "irwal/experiments.hpp"
#include "irwal/irwal.hpp"
#include "irwal/simulate.hpp"

namespace irwal {

// Exit statuses of the commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;    // nothing usable was written
inline constexpr int kExitPartial = 2;  // some requested artifacts are missing

IrwalConfig irwal_config_from(const RunConfig& cfg, Index num_series);
DgpSpec dgp_from(const RunConfig& cfg);
StudyOptions study_options_from(const RunConfig& cfg);

// Each command writes its artifacts and manifest.json into cfg.out. Errors
// propagate as irwal::Error; run_command turns them into an exit status.
int cmd_fit(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_bench_inclusion(const RunConfig& cfg, std::ostream& log);
int cmd_bench_mae(const RunConfig& cfg, std::ostream& log);
int cmd_bench_trend(const RunConfig& cfg, std::ostream& log);

int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err);

// Full command line: `irwal <command> [--config PATH] [--seed U64] [--out DIR]
// [--threads N] [--set key=value]...`.
int cli_main(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace irwal
