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

#include "mutlab/ops.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace mutlab {
namespace {

using Int = std::int64_t;

[[noreturn]] void TypeError(std::string_view what, const Value& lhs,
                            const Value& rhs) {
  throw EvalError(ErrorKind::kType,
                  std::string("unsupported operand types for ") +
                      std::string(what) + ": " + KindName(lhs.kind()) +
                      " and " + KindName(rhs.kind()));
}

[[noreturn]] void Overflow() {
  throw EvalError(ErrorKind::kOverflow, "integer overflow");
}

[[noreturn]] void DivisionByZero() {
  throw EvalError(ErrorKind::kDivisionByZero, "division by zero");
}

Int FloorDivInt(Int a, Int b) {
  if (b == 0) DivisionByZero();
  if (a == std::numeric_limits<Int>::min() && b == -1) Overflow();
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int FloorModInt(Int a, Int b) {
  if (b == 0) DivisionByZero();
  if (b == -1) return 0;
  Int r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

// Floor division and modulo on doubles, following CPython's float_divmod.
std::pair<double, double> FloatDivMod(double a, double b) {
  if (b == 0.0) DivisionByZero();
  double mod = std::fmod(a, b);
  double div = (a - mod) / b;
  if (mod != 0.0) {
    if ((b < 0) != (mod < 0)) {
      mod += b;
      div -= 1.0;
    }
  } else {
    mod = std::copysign(0.0, b);
  }
  double floordiv;
  if (div != 0.0) {
    floordiv = std::floor(div);
    if (div - floordiv > 0.5) floordiv += 1.0;
  } else {
    floordiv = std::copysign(0.0, a / b);
  }
  return {floordiv, mod};
}

Value ShiftLeft(Int a, Int b) {
  if (b < 0) throw EvalError(ErrorKind::kValue, "negative shift count");
  if (a == 0) return Value::Int(0);
  if (b >= 64) Overflow();
  __int128 wide = static_cast<__int128>(a) * (static_cast<__int128>(1) << b);
  if (wide > std::numeric_limits<Int>::max() ||
      wide < std::numeric_limits<Int>::min()) {
    Overflow();
  }
  return Value::Int(static_cast<Int>(wide));
}

Value ShiftRight(Int a, Int b) {
  if (b < 0) throw EvalError(ErrorKind::kValue, "negative shift count");
  if (b >= 64) return Value::Int(a < 0 ? -1 : 0);
  return Value::Int(a >> b);
}

Value IntArithmetic(BinaryOp op, Int a, Int b) {
  Int out = 0;
  switch (op) {
    case BinaryOp::kAdd:
      if (__builtin_add_overflow(a, b, &out)) Overflow();
      return Value::Int(out);
    case BinaryOp::kSub:
      if (__builtin_sub_overflow(a, b, &out)) Overflow();
      return Value::Int(out);
    case BinaryOp::kMul:
      if (__builtin_mul_overflow(a, b, &out)) Overflow();
      return Value::Int(out);
    case BinaryOp::kDiv:
      if (b == 0) DivisionByZero();
      return Value::Float(static_cast<double>(a) / static_cast<double>(b));
    case BinaryOp::kMod:
      return Value::Int(FloorModInt(a, b));
    case BinaryOp::kFloorDiv:
      return Value::Int(FloorDivInt(a, b));
    case BinaryOp::kShl:
      return ShiftLeft(a, b);
    case BinaryOp::kShr:
      return ShiftRight(a, b);
    case BinaryOp::kBitOr:
      return Value::Int(a | b);
    case BinaryOp::kBitXor:
      return Value::Int(a ^ b);
    case BinaryOp::kBitAnd:
      return Value::Int(a & b);
    default:
      break;
  }
  throw EvalError(ErrorKind::kType, "not an arithmetic operator");
}

Value FloatArithmetic(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::kAdd:
      return Value::Float(a + b);
    case BinaryOp::kSub:
      return Value::Float(a - b);
    case BinaryOp::kMul:
      return Value::Float(a * b);
    case BinaryOp::kDiv:
      if (b == 0.0) DivisionByZero();
      return Value::Float(a / b);
    case BinaryOp::kMod:
      return Value::Float(FloatDivMod(a, b).second);
    case BinaryOp::kFloorDiv:
      return Value::Float(FloatDivMod(a, b).first);
    default:
      break;
  }
  throw EvalError(ErrorKind::kType,
                  std::string("unsupported operand type float for ") +
                      std::string(Spelling(op)));
}

Value Concat(const Value& lhs, const Value& rhs) {
  if (lhs.is_str()) return Value::Str(lhs.as_str() + rhs.as_str());
  std::vector<Value> out(lhs.as_list().begin(), lhs.as_list().end());
  out.insert(out.end(), rhs.as_list().begin(), rhs.as_list().end());
  return Value::List(std::move(out));
}

Value Arithmetic(BinaryOp op, const Value& lhs, const Value& rhs) {
  if (lhs.is_int() && rhs.is_int()) {
    return IntArithmetic(op, lhs.as_int(), rhs.as_int());
  }
  if (lhs.is_number() && rhs.is_number()) {
    return FloatArithmetic(op, lhs.as_number(), rhs.as_number());
  }
  if (op == BinaryOp::kAdd && lhs.kind() == rhs.kind() &&
      (lhs.is_str() || lhs.is_list())) {
    return Concat(lhs, rhs);
  }
  TypeError(Spelling(op), lhs, rhs);
}

// Three-way ordering for `<`-family comparisons.
int Order(const Value& lhs, const Value& rhs) {
  if (lhs.is_int() && rhs.is_int()) {
    return lhs.as_int() < rhs.as_int() ? -1 : (lhs.as_int() > rhs.as_int());
  }
  if (lhs.is_number() && rhs.is_number()) {
    double a = lhs.as_number();
    double b = rhs.as_number();
    if (std::isnan(a) || std::isnan(b)) return 2;  // unordered
    return a < b ? -1 : (a > b);
  }
  if (lhs.is_str() && rhs.is_str()) {
    int c = lhs.as_str().compare(rhs.as_str());
    return c < 0 ? -1 : (c > 0);
  }
  TypeError("comparison", lhs, rhs);
}

bool Compare(BinaryOp op, const Value& lhs, const Value& rhs) {
  switch (op) {
    case BinaryOp::kEq:
      return LanguageEquals(lhs, rhs);
    case BinaryOp::kNe:
      return !LanguageEquals(lhs, rhs);
    default:
      break;
  }
  int order = Order(lhs, rhs);
  if (order == 2) return false;
  switch (op) {
    case BinaryOp::kLt:
      return order < 0;
    case BinaryOp::kLe:
      return order <= 0;
    case BinaryOp::kGt:
      return order > 0;
    case BinaryOp::kGe:
      return order >= 0;
    default:
      break;
  }
  return false;
}

void CheckArity(std::string_view name, std::span<const Value> args,
                std::size_t expected) {
  if (args.size() != expected) {
    throw EvalError(ErrorKind::kArity,
                    std::string(name) + "() takes " +
                        std::to_string(expected) + " argument(s), got " +
                        std::to_string(args.size()));
  }
}

Value Extremum(std::string_view name, std::span<const Value> args,
               bool want_max) {
  if (args.empty()) {
    throw EvalError(ErrorKind::kArity,
                    std::string(name) + "() expects at least 1 argument");
  }
  std::span<const Value> items = args;
  if (args.size() == 1) {
    if (!args[0].is_list()) {
      throw EvalError(ErrorKind::kType,
                      std::string(name) + "() of a single non-list value");
    }
    items = args[0].as_list();
    if (items.empty()) {
      throw EvalError(ErrorKind::kValue,
                      std::string(name) + "() of an empty list");
    }
  }
  const Value* best = &items[0];
  for (std::size_t i = 1; i < items.size(); ++i) {
    bool better = want_max ? Compare(BinaryOp::kGt, items[i], *best)
                           : Compare(BinaryOp::kLt, items[i], *best);
    if (better) best = &items[i];
  }
  return *best;
}

double RequireNumber(std::string_view name, const Value& v) {
  if (!v.is_number()) {
    throw EvalError(ErrorKind::kType, std::string(name) + "() of " +
                                          KindName(v.kind()));
  }
  return v.as_number();
}

}  // namespace

bool IsComparison(BinaryOp op) { return op >= BinaryOp::kEq; }

std::string_view Spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd:
      return "+";
    case BinaryOp::kSub:
      return "-";
    case BinaryOp::kMul:
      return "*";
    case BinaryOp::kDiv:
      return "/";
    case BinaryOp::kMod:
      return "%";
    case BinaryOp::kShl:
      return "<<";
    case BinaryOp::kShr:
      return ">>";
    case BinaryOp::kBitOr:
      return "|";
    case BinaryOp::kBitXor:
      return "^";
    case BinaryOp::kBitAnd:
      return "&";
    case BinaryOp::kFloorDiv:
      return "//";
    case BinaryOp::kEq:
      return "==";
    case BinaryOp::kNe:
      return "!=";
    case BinaryOp::kLt:
      return "<";
    case BinaryOp::kLe:
      return "<=";
    case BinaryOp::kGt:
      return ">";
    case BinaryOp::kGe:
      return ">=";
  }
  return "?";
}

std::string_view Spelling(UnaryOp op) {
  return op == UnaryOp::kNeg ? "-" : "not";
}

std::string_view Spelling(LogicalOp op) {
  return op == LogicalOp::kAnd ? "and" : "or";
}

std::optional<BinaryOp> ParseBinaryOp(std::string_view token) {
  for (BinaryOp op : kArithmeticOps) {
    if (Spelling(op) == token) return op;
  }
  for (BinaryOp op : kComparisonOps) {
    if (Spelling(op) == token) return op;
  }
  return std::nullopt;
}

Value ApplyBinary(BinaryOp op, const Value& lhs, const Value& rhs) {
  if (IsComparison(op)) return Value::Bool(Compare(op, lhs, rhs));
  return Arithmetic(op, lhs, rhs);
}

Value ApplyUnary(UnaryOp op, const Value& operand) {
  if (op == UnaryOp::kNot) return Value::Bool(!RequireBool(operand));
  if (operand.is_int()) {
    if (operand.as_int() == std::numeric_limits<Int>::min()) Overflow();
    return Value::Int(-operand.as_int());
  }
  if (operand.is_float()) return Value::Float(-operand.as_float());
  throw EvalError(ErrorKind::kType, std::string("bad operand type for -: ") +
                                        KindName(operand.kind()));
}

bool LanguageEquals(const Value& lhs, const Value& rhs) {
  if (lhs.is_number() && rhs.is_number()) {
    if (lhs.is_int() && rhs.is_int()) return lhs.as_int() == rhs.as_int();
    return lhs.as_number() == rhs.as_number();
  }
  if (lhs.kind() != rhs.kind()) return false;
  if (lhs.is_list()) {
    auto a = lhs.as_list();
    auto b = rhs.as_list();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!LanguageEquals(a[i], b[i])) return false;
    }
    return true;
  }
  return lhs == rhs;
}

Value ApplyIndex(const Value& container, const Value& index) {
  if (!index.is_int()) {
    throw EvalError(ErrorKind::kType, std::string("indices must be int, not ") +
                                          KindName(index.kind()));
  }
  Int size = 0;
  if (container.is_list()) {
    size = static_cast<Int>(container.as_list().size());
  } else if (container.is_str()) {
    size = static_cast<Int>(container.as_str().size());
  } else {
    throw EvalError(ErrorKind::kType, std::string(KindName(container.kind())) +
                                          " is not subscriptable");
  }
  Int i = index.as_int();
  if (i < 0) i += size;
  if (i < 0 || i >= size) {
    throw EvalError(ErrorKind::kIndex, "index out of range");
  }
  if (container.is_list()) return container.as_list()[i];
  return Value::Str(std::string(1, container.as_str()[i]));
}

bool RequireBool(const Value& v) {
  if (!v.is_bool()) {
    throw EvalError(ErrorKind::kType,
                    std::string("condition must be bool, not ") +
                        KindName(v.kind()));
  }
  return v.as_bool();
}

std::optional<Builtin> LookupBuiltin(std::string_view name) {
  static constexpr std::pair<std::string_view, Builtin> kTable[] = {
      {"len", Builtin::kLen},   {"ord", Builtin::kOrd},
      {"chr", Builtin::kChr},   {"abs", Builtin::kAbs},
      {"min", Builtin::kMin},   {"max", Builtin::kMax},
      {"sqrt", Builtin::kSqrt}, {"log", Builtin::kLog},
      {"int", Builtin::kInt},   {"float", Builtin::kFloat},
      {"print", Builtin::kPrint},
  };
  for (const auto& [n, b] : kTable) {
    if (n == name) return b;
  }
  return std::nullopt;
}

Value CallBuiltin(Builtin builtin, std::span<const Value> args) {
  switch (builtin) {
    case Builtin::kLen:
      CheckArity("len", args, 1);
      if (args[0].is_str()) {
        return Value::Int(static_cast<Int>(args[0].as_str().size()));
      }
      if (args[0].is_list()) {
        return Value::Int(static_cast<Int>(args[0].as_list().size()));
      }
      throw EvalError(ErrorKind::kType, std::string("len() of ") +
                                            KindName(args[0].kind()));
    case Builtin::kOrd:
      CheckArity("ord", args, 1);
      if (!args[0].is_str() || args[0].as_str().size() != 1) {
        throw EvalError(ErrorKind::kType,
                        "ord() expects a string of length 1");
      }
      return Value::Int(static_cast<unsigned char>(args[0].as_str()[0]));
    case Builtin::kChr: {
      CheckArity("chr", args, 1);
      if (!args[0].is_int()) {
        throw EvalError(ErrorKind::kType, "chr() expects an int");
      }
      Int code = args[0].as_int();
      if (code < 0 || code > 255) {
        throw EvalError(ErrorKind::kValue, "chr() arg not in range(256)");
      }
      return Value::Str(std::string(1, static_cast<char>(code)));
    }
    case Builtin::kAbs:
      CheckArity("abs", args, 1);
      if (args[0].is_int()) {
        if (args[0].as_int() == std::numeric_limits<Int>::min()) Overflow();
        return Value::Int(args[0].as_int() < 0 ? -args[0].as_int()
                                               : args[0].as_int());
      }
      return Value::Float(std::fabs(RequireNumber("abs", args[0])));
    case Builtin::kMin:
      return Extremum("min", args, false);
    case Builtin::kMax:
      return Extremum("max", args, true);
    case Builtin::kSqrt: {
      CheckArity("sqrt", args, 1);
      double x = RequireNumber("sqrt", args[0]);
      if (x < 0) throw EvalError(ErrorKind::kValue, "math domain error");
      return Value::Float(std::sqrt(x));
    }
    case Builtin::kLog: {
      CheckArity("log", args, 1);
      double x = RequireNumber("log", args[0]);
      if (!(x > 0)) throw EvalError(ErrorKind::kValue, "math domain error");
      return Value::Float(std::log(x));
    }
    case Builtin::kInt: {
      CheckArity("int", args, 1);
      const Value& v = args[0];
      if (v.is_int()) return v;
      if (v.is_bool()) return Value::Int(v.as_bool() ? 1 : 0);
      if (v.is_float()) {
        double t = std::trunc(v.as_float());
        if (!std::isfinite(t)) {
          throw EvalError(ErrorKind::kValue, "cannot convert float to int");
        }
        if (t >= 9223372036854775808.0 || t < -9223372036854775808.0) {
          Overflow();
        }
        return Value::Int(static_cast<Int>(t));
      }
      if (v.is_str()) {
        Int out = 0;
        const std::string& s = v.as_str();
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
          throw EvalError(ErrorKind::kValue, "invalid literal for int()");
        }
        return Value::Int(out);
      }
      throw EvalError(ErrorKind::kType, std::string("int() of ") +
                                            KindName(v.kind()));
    }
    case Builtin::kFloat: {
      CheckArity("float", args, 1);
      const Value& v = args[0];
      if (v.is_bool()) return Value::Float(v.as_bool() ? 1.0 : 0.0);
      return Value::Float(RequireNumber("float", v));
    }
    case Builtin::kPrint:
      return Value::None();
  }
  return Value::None();
}

}  // namespace mutlab
