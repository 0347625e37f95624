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

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "gtest/gtest.h"
#include "mutlab/eval.h"
#include "mutlab/ops.h"
#include "mutlab/parser.h"

namespace mutlab {
namespace {

Value Bin(BinaryOp op, Value a, Value b) { return ApplyBinary(op, a, b); }

ErrorKind BinError(BinaryOp op, Value a, Value b) {
  try {
    ApplyBinary(op, a, b);
  } catch (const EvalError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kValue;
}

TEST(OpsTest, FloorDivisionAndModuloRoundTowardNegativeInfinity) {
  // Floor semantics: a == (a // b) * b + a % b with the sign of b.
  for (std::int64_t a = -7; a <= 7; ++a) {
    for (std::int64_t b : {-3, -2, 2, 3}) {
      std::int64_t q = Bin(BinaryOp::kFloorDiv, Value::Int(a), Value::Int(b))
                           .as_int();
      std::int64_t r =
          Bin(BinaryOp::kMod, Value::Int(a), Value::Int(b)).as_int();
      EXPECT_EQ(q * b + r, a);
      EXPECT_EQ(q, static_cast<std::int64_t>(
                       std::floor(static_cast<double>(a) / b)));
      if (r != 0) EXPECT_EQ(r < 0, b < 0);
    }
  }
  EXPECT_EQ(Bin(BinaryOp::kMod, Value::Float(-1.5), Value::Int(2)),
            Value::Float(0.5));
}

TEST(OpsTest, TrueDivisionAlwaysYieldsFloat) {
  EXPECT_EQ(Bin(BinaryOp::kDiv, Value::Int(4), Value::Int(2)),
            Value::Float(2.0));
  EXPECT_EQ(Bin(BinaryOp::kDiv, Value::Int(1), Value::Int(2)),
            Value::Float(0.5));
  EXPECT_EQ(BinError(BinaryOp::kDiv, Value::Int(1), Value::Int(0)),
            ErrorKind::kDivisionByZero);
  EXPECT_EQ(BinError(BinaryOp::kMod, Value::Float(1), Value::Float(0)),
            ErrorKind::kDivisionByZero);
}

TEST(OpsTest, BitwiseAndShiftRequireIntegers) {
  EXPECT_EQ(Bin(BinaryOp::kShl, Value::Int(1), Value::Int(3)), Value::Int(8));
  EXPECT_EQ(Bin(BinaryOp::kShr, Value::Int(-8), Value::Int(1)),
            Value::Int(-4));
  EXPECT_EQ(Bin(BinaryOp::kBitXor, Value::Int(6), Value::Int(3)),
            Value::Int(5));
  EXPECT_EQ(BinError(BinaryOp::kShl, Value::Float(1), Value::Int(1)),
            ErrorKind::kType);
  EXPECT_EQ(BinError(BinaryOp::kShl, Value::Int(1), Value::Int(-1)),
            ErrorKind::kValue);
  EXPECT_EQ(BinError(BinaryOp::kShl, Value::Int(1), Value::Int(64)),
            ErrorKind::kOverflow);
}

TEST(OpsTest, IntegerOverflowIsAnError) {
  Value max = Value::Int(std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ(BinError(BinaryOp::kAdd, max, Value::Int(1)),
            ErrorKind::kOverflow);
  EXPECT_EQ(BinError(BinaryOp::kMul, max, Value::Int(2)),
            ErrorKind::kOverflow);
}

TEST(OpsTest, ComparisonsAndEquality) {
  EXPECT_EQ(Bin(BinaryOp::kLt, Value::Int(1), Value::Float(1.5)),
            Value::Bool(true));
  EXPECT_EQ(Bin(BinaryOp::kEq, Value::Int(1), Value::Float(1.0)),
            Value::Bool(true));
  EXPECT_EQ(Bin(BinaryOp::kEq, Value::Int(1), Value::Str("1")),
            Value::Bool(false));
  EXPECT_EQ(Bin(BinaryOp::kLt, Value::Str("ab"), Value::Str("b")),
            Value::Bool(true));
  EXPECT_EQ(BinError(BinaryOp::kLt, Value::Int(1), Value::Str("1")),
            ErrorKind::kType);
  // Structural equality distinguishes kinds.
  EXPECT_FALSE(Value::Int(1) == Value::Float(1.0));
}

TEST(OpsTest, ConcatenationAndIndexing) {
  EXPECT_EQ(Bin(BinaryOp::kAdd, Value::Str("ab"), Value::Str("c")),
            Value::Str("abc"));
  Value list = Value::List({Value::Int(1), Value::Int(2)});
  EXPECT_EQ(ApplyIndex(list, Value::Int(-1)), Value::Int(2));
  EXPECT_EQ(ApplyIndex(Value::Str("xyz"), Value::Int(1)), Value::Str("y"));
  EXPECT_THROW(ApplyIndex(list, Value::Int(2)), EvalError);
}

TEST(ValueTest, RendersLikeSource) {
  EXPECT_EQ(Value::Float(1.0).ToString(), "1.0");
  EXPECT_EQ(Value::Float(0.1).ToString(), "0.1");
  EXPECT_EQ(Value::Bool(true).ToString(), "True");
  EXPECT_EQ(Value::List({Value::Int(1), Value::Str("a")}).ToString(),
            "[1, 'a']");
}

TEST(ParserTest, ReportsLocations) {
  try {
    ParseProgram("def f():\n  x = (1 +\n");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_GE(e.location().line, 2);
  }
  EXPECT_THROW(ParseProgram("x = 1\n"), SyntaxError);
  EXPECT_THROW(ParseProgram("def f():\n\tx = 1\n"), SyntaxError);
  EXPECT_THROW(ParseProgram("def f(a, a):\n  return a\n"), SyntaxError);
}

TEST(ParserTest, PrintedProgramReparsesToSameText) {
  const char* source =
      "def f(a, b):\n"
      "  x = (a + b) * 2 - a // -b\n"
      "  if not x < 3 and a == b or b >= 1:\n"
      "    x += 1\n"
      "  elif x != 2:\n"
      "    x = [1, 'q\\n', 2.5][0]\n"
      "  else:\n"
      "    return None\n"
      "  while x > 0:\n"
      "    x -= 1\n"
      "  assert x == 0\n"
      "  return a - (b - x)\n";
  std::string printed = PrintProgram(ParseProgram(source));
  EXPECT_EQ(printed, source);
  EXPECT_EQ(PrintProgram(ParseProgram(printed)), printed);
}

TEST(EvalTest, CountsStatementsAndLoopChecks) {
  Program p = ParseProgram(
      "def f(n):\n"
      "  s = 0\n"
      "  i = 0\n"
      "  while i < n:\n"
      "    s += i\n"
      "    i += 1\n"
      "  return s\n");
  for (std::int64_t n : {0, 1, 3, 10}) {
    PlainResult r = EvalPlain(p, "f", {{"n", Value::Int(n)}});
    ASSERT_TRUE(r.outcome.passed());
    EXPECT_EQ(r.outcome.value, Value::Int(n * (n - 1) / 2));
    // Two assignments, n + 1 condition checks, 2n body statements, return.
    EXPECT_EQ(r.statements, 3 * n + 4);
  }
}

TEST(EvalTest, ClassifiesOutcomes) {
  Program p = ParseProgram(
      "def test_assert():\n"
      "  assert 1 + 1 == 3\n"
      "def test_raise():\n"
      "  x = [1][5]\n"
      "def test_loop():\n"
      "  while True:\n"
      "    x = 1\n"
      "def test_recurse():\n"
      "  return test_recurse()\n"
      "def test_ok():\n"
      "  assert len('abc') == 3\n");
  EXPECT_EQ(EvalPlain(p, "test_assert", {}).outcome.kind,
            OutcomeKind::kAssertionFailure);
  PlainResult raised = EvalPlain(p, "test_raise", {});
  EXPECT_EQ(raised.outcome.kind, OutcomeKind::kRuntimeException);
  EXPECT_EQ(raised.outcome.error, ErrorKind::kIndex);
  EXPECT_EQ(raised.outcome.loc.line, 4);
  PlainOptions bounded;
  bounded.step_budget = 100;
  PlainResult looped = EvalPlain(p, "test_loop", {}, bounded);
  EXPECT_EQ(looped.outcome.kind, OutcomeKind::kTimeout);
  EXPECT_EQ(looped.statements, 101);
  PlainResult deep = EvalPlain(p, "test_recurse", {});
  EXPECT_EQ(deep.outcome.error, ErrorKind::kRecursion);
  EXPECT_TRUE(EvalPlain(p, "test_ok", {}).outcome.passed());
}

TEST(EvalTest, ShortCircuitSkipsRightOperand) {
  Program p = ParseProgram(
      "def f(x):\n"
      "  return x != 0 and 10 // x > 1\n");
  EXPECT_EQ(EvalPlain(p, "f", {{"x", Value::Int(0)}}).outcome.value,
            Value::Bool(false));
  EXPECT_EQ(EvalPlain(p, "f", {{"x", Value::Int(3)}}).outcome.value,
            Value::Bool(true));
}

TEST(EvalTest, NonBoolConditionIsTypeError) {
  Program p = ParseProgram("def f():\n  if 1:\n    return 2\n");
  PlainResult r = EvalPlain(p, "f", {});
  EXPECT_EQ(r.outcome.kind, OutcomeKind::kRuntimeException);
  EXPECT_EQ(r.outcome.error, ErrorKind::kType);
}

}  // namespace
}  // namespace mutlab
