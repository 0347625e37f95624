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

// Operator semantics of the mini-language. These functions are shared by
// the plain evaluator and the taint interpreter; every error surfaces as
// an EvalError.

#ifndef MUTLAB_OPS_H_
#define MUTLAB_OPS_H_

#include <optional>
#include <span>
#include <string_view>

#include "mutlab/value.h"

namespace mutlab {

enum class BinaryOp {
  // Arithmetic class, in mutation catalog order.
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kShl,
  kShr,
  kBitOr,
  kBitXor,
  kBitAnd,
  kFloorDiv,
  // Comparison class, in mutation catalog order.
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
};

enum class UnaryOp { kNeg, kNot };

enum class LogicalOp { kAnd, kOr };

inline constexpr BinaryOp kArithmeticOps[] = {
    BinaryOp::kAdd, BinaryOp::kSub,    BinaryOp::kMul,    BinaryOp::kDiv,
    BinaryOp::kMod, BinaryOp::kShl,    BinaryOp::kShr,    BinaryOp::kBitOr,
    BinaryOp::kBitXor, BinaryOp::kBitAnd, BinaryOp::kFloorDiv};

inline constexpr BinaryOp kComparisonOps[] = {BinaryOp::kEq, BinaryOp::kNe,
                                              BinaryOp::kLt, BinaryOp::kLe,
                                              BinaryOp::kGt, BinaryOp::kGe};

bool IsComparison(BinaryOp op);
std::string_view Spelling(BinaryOp op);
std::string_view Spelling(UnaryOp op);
std::string_view Spelling(LogicalOp op);
std::optional<BinaryOp> ParseBinaryOp(std::string_view token);

Value ApplyBinary(BinaryOp op, const Value& lhs, const Value& rhs);
Value ApplyUnary(UnaryOp op, const Value& operand);

// The language-level `==`: numeric across Int/Float, deep for lists.
bool LanguageEquals(const Value& lhs, const Value& rhs);

// Element access with Python-style negative indices.
Value ApplyIndex(const Value& container, const Value& index);

// Conditions and logical operands must be Bool.
bool RequireBool(const Value& v);

enum class Builtin {
  kLen,
  kOrd,
  kChr,
  kAbs,
  kMin,
  kMax,
  kSqrt,
  kLog,
  kInt,
  kFloat,
  kPrint,
};

std::optional<Builtin> LookupBuiltin(std::string_view name);
Value CallBuiltin(Builtin builtin, std::span<const Value> args);

}  // namespace mutlab

#endif  // MUTLAB_OPS_H_
