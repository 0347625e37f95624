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

// AST of the mini-language. Nodes are immutable and shared; transformations
// build new trees that reuse untouched subtrees.
//
// The same node types describe both plain programs and meta-mutants. A
// meta-mutant additionally contains TaintChoice and TaintedCond nodes and
// marks its functions as wrapped.

#ifndef MUTLAB_AST_H_
#define MUTLAB_AST_H_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mutlab/mutant_id.h"
#include "mutlab/ops.h"
#include "mutlab/value.h"

namespace mutlab {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal {
  Value value;
};

struct Variable {
  std::string name;
};

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Logical {
  LogicalOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Call {
  std::string callee;
  std::vector<ExprPtr> args;
};

struct ListLiteral {
  std::vector<ExprPtr> elements;
};

struct Subscript {
  ExprPtr container;
  ExprPtr index;
};

// `@T(<M0: l op r>, <Mi: l op_i r>, ...)`. The operands are shared by every
// variant; each variant is the operator it applies to its own execution
// taints of the operands.
struct TaintChoice {
  int point = 0;
  BinaryOp original;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<std::pair<MutantId, BinaryOp>> variants;  // sorted, no M0

  // The operator mutant `m` applies at this point (the original when `m`
  // has no variant here).
  BinaryOp OpFor(MutantId m) const;
};

// `@C(expr)`: a branch or loop condition probed for control-flow
// divergence between the mainline and its execution taints.
struct TaintedCond {
  ExprPtr cond;
};

struct Expr {
  Location loc;
  std::variant<Literal, Variable, Unary, Binary, Logical, Call, ListLiteral,
               Subscript, TaintChoice, TaintedCond>
      node;
};

template <typename T>
ExprPtr MakeExpr(Location loc, T node) {
  return std::make_shared<const Expr>(Expr{loc, std::move(node)});
}

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
  std::string target;
  ExprPtr value;
};

// `target op= value`. Evaluated as `target = target op value`.
struct AugAssign {
  std::string target;
  BinaryOp op;
  Location op_loc;
  ExprPtr value;
};

struct While {
  ExprPtr cond;
  Block body;
};

struct If {
  ExprPtr cond;
  Block then_body;
  Block else_body;
};

struct Return {
  ExprPtr value;  // null for a bare `return`
};

struct Assert {
  ExprPtr cond;
};

struct ExprStmt {
  ExprPtr expr;
};

struct Stmt {
  Location loc;
  std::variant<Assign, AugAssign, While, If, Return, Assert, ExprStmt> node;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> params;
  Block body;
  Location loc;
  bool wrapped = false;

  bool is_test() const { return name.rfind("test_", 0) == 0; }
};

struct Program {
  std::vector<FunctionDef> functions;

  const FunctionDef* Find(std::string_view name) const;
  std::vector<std::string> TestNames() const;
};

}  // namespace mutlab

#endif  // MUTLAB_AST_H_
