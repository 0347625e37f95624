// Copyright 2026 The Mutlab Authors
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

#ifndef MUTLAB_PARSER_H_
#define MUTLAB_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "mutlab/ast.h"

namespace mutlab {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, Location loc)
      : std::runtime_error(ToString(loc) + ": " + message), loc_(loc) {}
  Location location() const { return loc_; }

 private:
  Location loc_;
};

// Parses `.ml0` source. Blocks are delimited by indentation; `#` starts a
// comment. Only `def` is allowed at the top level. Throws SyntaxError.
Program ParseProgram(std::string_view source);

// Renders a program back to source. Meta nodes print in the `@T(...)` and
// `@C(...)` notation; such output is for display and does not re-parse.
std::string PrintProgram(const Program& program);
std::string PrintExpr(const Expr& expr);

}  // namespace mutlab

#endif  // MUTLAB_PARSER_H_
