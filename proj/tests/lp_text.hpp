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
//
// Minimal LP-format reader used by the tests to check emitted models
// independently of the writer: it parses the objective and constraint
// rows back into coefficient maps and evaluates them at a variable
// assignment.

#ifndef FOGFED_TESTS_LP_TEXT_HPP
#define FOGFED_TESTS_LP_TEXT_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fogfed::lp_text {

struct linear_expr {
  std::map<std::string, double> coefs;
  double constant = 0.0;

  double eval(const std::map<std::string, double>& values) const;
};

enum class relation { le, ge, eq };

struct constraint {
  std::string name;
  linear_expr lhs;
  relation rel = relation::le;
  double rhs = 0.0;

  bool satisfied(const std::map<std::string, double>& values,
                 double tol) const;
};

struct model {
  bool minimize = true;
  linear_expr objective;
  std::vector<constraint> constraints;
  std::vector<std::string> binaries;
  std::vector<std::string> generals;
};

model parse_file(const std::filesystem::path& path);
model parse_string(const std::string& text);

}  // namespace fogfed::lp_text

#endif  // FOGFED_TESTS_LP_TEXT_HPP
