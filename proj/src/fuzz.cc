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

#include "mutlab/fuzz.h"

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mutlab/eval.h"
#include "mutlab/parser.h"

namespace mutlab {
namespace {

constexpr int kMaxAttempts = 1000;

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  // Source whose test ends in `return r`, plus the same with the final
  // line left for the assert.
  std::vector<std::string> Draft();

 private:
  int Pick(int n) { return static_cast<int>(rng_() % n); }

  std::string Literal() {
    static const char* const kFloats[] = {"0.5", "1.5", "2.25", "3.0"};
    if (Pick(8) == 0) return kFloats[Pick(4)];
    return std::to_string(Pick(6));
  }

  std::string Operator() {
    static const char* const kOps[] = {"+", "+", "+", "-", "-", "-",
                                       "*", "*", "//", "%", "/"};
    return kOps[Pick(11)];
  }

  std::string Comparison() {
    static const char* const kOps[] = {"<", "<=", ">", ">=", "==", "!="};
    return kOps[Pick(6)];
  }

  std::string Expr(const std::vector<std::string>& vars, int depth) {
    if (depth == 0 || Pick(3) == 0) {
      if (!vars.empty() && Pick(10) < 7) return vars[Pick(vars.size())];
      return Literal();
    }
    return "(" + Expr(vars, depth - 1) + " " + Operator() + " " +
           Expr(vars, depth - 1) + ")";
  }

  std::string Cond(const std::vector<std::string>& vars) {
    return Expr(vars, 1) + " " + Comparison() + " " + Expr(vars, 1);
  }

  void Helper(std::vector<std::string>& out);
  void Loop(std::vector<std::string>& out, const std::string& indent,
            const std::string& counter, std::vector<std::string> vars,
            bool call_helper);

  std::mt19937_64 rng_;
};

void Generator::Helper(std::vector<std::string>& out) {
  out.push_back("def h(x, y):");
  out.push_back("  t = " + Expr({"x", "y"}, 2));
  out.push_back("  if " + Cond({"x", "y", "t"}) + ":");
  out.push_back("    t = " + Expr({"t", "x", "y"}, 2));
  if (Pick(2) == 0) {
    out.push_back("  else:");
    out.push_back("    t = " + Expr({"t", "x"}, 1));
  }
  out.push_back("  return " + Expr({"t", "x", "y"}, 2));
  out.push_back("");
}

void Generator::Loop(std::vector<std::string>& out, const std::string& indent,
                     const std::string& counter,
                     std::vector<std::string> vars, bool call_helper) {
  out.push_back(indent + counter + " = 0");
  out.push_back(indent + "while " + counter + " < " +
                std::to_string(1 + Pick(4)) + ":");
  vars.push_back(counter);
  if (call_helper) {
    out.push_back(indent + "  acc = acc " + (Pick(2) == 0 ? "+" : "-") +
                  " h(" + counter + ", " + Expr(vars, 1) + ")");
  } else {
    out.push_back(indent + "  acc = " + Expr(vars, 2));
  }
  if (Pick(2) == 0) {
    out.push_back(indent + "  " + counter + " += 1");
  } else {
    out.push_back(indent + "  " + counter + " = " + counter + " + 1");
  }
}

std::vector<std::string> Generator::Draft() {
  std::vector<std::string> out;
  Helper(out);
  bool separate = Pick(2) == 0;
  int loops = 1 + Pick(2);
  std::vector<std::string> body;
  std::vector<std::string> vars = separate ? std::vector<std::string>{"n", "acc"}
                                           : std::vector<std::string>{"acc"};
  body.push_back("  acc = " + Expr(separate ? std::vector<std::string>{"n"}
                                            : std::vector<std::string>{},
                                   1));
  Loop(body, "  ", "i", vars, true);
  if (loops == 2) Loop(body, "  ", "j", vars, Pick(2) == 0);
  if (separate) {
    out.push_back("def g(n):");
    out.insert(out.end(), body.begin(), body.end());
    out.push_back("  return acc");
    out.push_back("");
    out.push_back("def test_main():");
    out.push_back("  r = g(" + Literal() + ")");
  } else {
    out.push_back("def test_main():");
    out.insert(out.end(), body.begin(), body.end());
    out.push_back("  r = acc");
  }
  return out;
}

std::optional<std::string> LiteralFor(const Value& v) {
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_float() && std::isfinite(v.as_float())) {
    return FormatFloat(v.as_float());
  }
  return std::nullopt;
}

std::string Join(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

bool Passes(const std::string& source) {
  try {
    Program program = ParseProgram(source);
    return EvalPlain(program, "test_main", {}).outcome.passed();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

std::string FuzzProgram(std::uint64_t seed) {
  Generator gen(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<std::string> lines = gen.Draft();
    lines.push_back("  return r");
    std::optional<Value> value;
    try {
      Program program = ParseProgram(Join(lines));
      PlainResult r = EvalPlain(program, "test_main", {});
      if (r.outcome.passed()) value = r.outcome.value;
    } catch (const std::exception&) {
    }
    if (!value) continue;
    std::optional<std::string> literal = LiteralFor(*value);
    if (!literal) continue;
    lines.back() = "  assert r == " + *literal;
    std::string source = Join(lines);
    if (Passes(source)) return source;
  }
  return "def test_main():\n  assert 1 + 1 == 2\n";
}

}  // namespace mutlab
