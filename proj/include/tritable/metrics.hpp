// Copyright 2026 The tritable Authors
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

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace tritable {

// One benchmark observation. runtime_seconds is the best (minimum) over
// the run's repetitions; the processing rate is 2*nppf/runtime because
// every partial product is touched at least twice, once by the multiply
// and once by the reduce.
struct RunMetrics {
  std::string scale;  // scale number, or input name for file runs
  std::string algo;
  std::uint64_t nedges = 0;
  std::uint64_t nppf = 0;
  std::uint64_t triangles = 0;
  double runtime_seconds = 0.0;
  double matmul_seconds = 0.0;
  double reduce_seconds = 0.0;

  double rate() const {
    return runtime_seconds > 0.0
               ? 2.0 * static_cast<double>(nppf) / runtime_seconds
               : 0.0;
  }
};

// Stable CSV schema, locale-independent formatting.
extern const char* const kMetricsCsvHeader;
std::string to_csv_row(const RunMetrics& m);

void print_metrics(std::ostream& out, const RunMetrics& m);
void print_metrics_table(std::ostream& out, std::span<const RunMetrics> rows);

}  // namespace tritable
