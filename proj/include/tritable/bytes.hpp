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
#include <stdexcept>
#include <string>

namespace tritable {

// Byte sequences are std::string: char_traits<char> compares as unsigned
// char, so the default string ordering is bytewise lexicographic.
using Bytes = std::string;

// Thrown when a table fails a pipeline precondition (triangularity, unit
// values, incidence column cardinality, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric values travel as fixed 8-byte big-endian unsigned integers.
// Big-endian keeps numeric order equal to byte order, and no number ever
// encodes to the empty sequence, which is reserved as a marker value.
Bytes encode_value(uint64_t v);
uint64_t decode_value(const Bytes& b);

inline bool is_marker(const Bytes& value) { return value.empty(); }

// Smallest byte sequence strictly greater than `row` such that the
// half-open interval [row, successor) contains exactly `row`.
inline Bytes row_successor(const Bytes& row) {
  Bytes next = row;
  next.push_back('\0');
  return next;
}

// Printable bytes pass through; everything else (plus tab and backslash)
// becomes \xNN. Used by the TSV debug dump.
std::string escape_bytes(const Bytes& b);

}  // namespace tritable
