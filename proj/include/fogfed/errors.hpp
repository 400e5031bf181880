// Copyright 2026 The Fogfed Authors
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

#ifndef FOGFED_ERRORS_HPP
#define FOGFED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fogfed {

/// Invalid scenario parameters (bad counts, ranges, capacities, config fields).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lookup of a node or entity that does not exist.
struct not_found_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source and destination live in disconnected components.
struct unroutable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file contents.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem read/write failure.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance exceeds a configured enumeration cap.
struct too_large_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fogfed

#endif  // FOGFED_ERRORS_HPP
