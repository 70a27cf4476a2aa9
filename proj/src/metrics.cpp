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

#include "tritable/metrics.hpp"

#include <cstdio>

namespace tritable {

const char* const kMetricsCsvHeader =
    "scale,algo,nedges,nppf,time_s,rate,matmul_s,reduce_s,triangles";

namespace {

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string to_csv_row(const RunMetrics& m) {
  std::string row;
  row += m.scale;
  row += ',';
  row += m.algo;
  row += ',';
  row += std::to_string(m.nedges);
  row += ',';
  row += std::to_string(m.nppf);
  row += ',';
  row += format_double(m.runtime_seconds, "%.6f");
  row += ',';
  row += format_double(m.rate(), "%.3f");
  row += ',';
  row += format_double(m.matmul_seconds, "%.6f");
  row += ',';
  row += format_double(m.reduce_seconds, "%.6f");
  row += ',';
  row += std::to_string(m.triangles);
  return row;
}

void print_metrics(std::ostream& out, const RunMetrics& m) {
  out << "scale      " << m.scale << "\n"
      << "algo       " << m.algo << "\n"
      << "nedges     " << m.nedges << "\n"
      << "nppf       " << m.nppf << "\n"
      << "time_s     " << format_double(m.runtime_seconds, "%.6f") << "\n"
      << "rate       " << format_double(m.rate(), "%.3f") << " entries/s\n"
      << "matmul_s   " << format_double(m.matmul_seconds, "%.6f") << "\n"
      << "reduce_s   " << format_double(m.reduce_seconds, "%.6f") << "\n"
      << "triangles  " << m.triangles << "\n";
}

void print_metrics_table(std::ostream& out,
                         std::span<const RunMetrics> rows) {
  char line[256];
  std::snprintf(line, sizeof(line), "%-6s %-8s %10s %12s %10s %14s %10s\n",
                "scale", "algo", "nedges", "nppf", "time_s", "rate",
                "triangles");
  out << line;
  for (const RunMetrics& m : rows) {
    std::snprintf(line, sizeof(line),
                  "%-6s %-8s %10llu %12llu %10.3f %14.1f %10llu\n",
                  m.scale.c_str(), m.algo.c_str(),
                  static_cast<unsigned long long>(m.nedges),
                  static_cast<unsigned long long>(m.nppf), m.runtime_seconds,
                  m.rate(), static_cast<unsigned long long>(m.triangles));
    out << line;
  }
}

}  // namespace tritable
