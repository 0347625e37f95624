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
#include <string>
#include <type_traits>
#include <variant>

#include "mutlab/parser.h"

namespace mutlab {
namespace {

// Binding strength, loosest first.
enum Prec {
  kOr = 1,
  kAnd,
  kNot,
  kCompare,
  kBitOr,
  kBitXor,
  kBitAnd,
  kShift,
  kAdditive,
  kMultiplicative,
  kNegate,
  kPostfix,
  kAtom,
};

int PrecOf(BinaryOp op) {
  switch (op) {
    case BinaryOp::kBitOr:
      return kBitOr;
    case BinaryOp::kBitXor:
      return kBitXor;
    case BinaryOp::kBitAnd:
      return kBitAnd;
    case BinaryOp::kShl:
    case BinaryOp::kShr:
      return kShift;
    case BinaryOp::kAdd:
    case BinaryOp::kSub:
      return kAdditive;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kFloorDiv:
    case BinaryOp::kMod:
      return kMultiplicative;
    default:
      return kCompare;
  }
}

struct PrecVisitor {
  int operator()(const Literal& lit) const {
    // Negative numeric literals only come from generated trees.
    if ((lit.value.is_int() && lit.value.as_int() < 0) ||
        (lit.value.is_float() && std::signbit(lit.value.as_float()))) {
      return kNegate;
    }
    return kAtom;
  }
  int operator()(const Unary& u) const {
    return u.op == UnaryOp::kNot ? kNot : kNegate;
  }
  int operator()(const Binary& b) const { return PrecOf(b.op); }
  int operator()(const Logical& l) const {
    return l.op == LogicalOp::kOr ? kOr : kAnd;
  }
  int operator()(const Subscript&) const { return kPostfix; }
  template <typename T>
  int operator()(const T&) const { return kAtom; }
};

int PrecOf(const Expr& e) { return std::visit(PrecVisitor{}, e.node); }

std::string Wrap(const Expr& e, bool parens) {
  std::string s = PrintExpr(e);
  return parens ? "(" + s + ")" : s;
}

std::string BinaryText(BinaryOp op, const Expr& lhs, const Expr& rhs) {
  int p = PrecOf(op);
  bool non_assoc = p == kCompare;
  return Wrap(lhs, PrecOf(lhs) < p || (non_assoc && PrecOf(lhs) <= p)) + " " +
         std::string(Spelling(op)) + " " + Wrap(rhs, PrecOf(rhs) <= p);
}

void PrintBlock(const Block& block, int indent, std::string& out);

void PrintStmt(const Stmt& stmt, int indent, std::string& out) {
  std::string pad(indent, ' ');
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Assign>) {
          out += pad + s.target + " = " + PrintExpr(*s.value) + "\n";
        } else if constexpr (std::is_same_v<T, AugAssign>) {
          out += pad + s.target + " " + std::string(Spelling(s.op)) + "= " +
                 PrintExpr(*s.value) + "\n";
        } else if constexpr (std::is_same_v<T, While>) {
          out += pad + "while " + PrintExpr(*s.cond) + ":\n";
          PrintBlock(s.body, indent + 2, out);
        } else if constexpr (std::is_same_v<T, If>) {
          out += pad + "if " + PrintExpr(*s.cond) + ":\n";
          PrintBlock(s.then_body, indent + 2, out);
          const If* tail = &s;
          while (tail->else_body.size() == 1 &&
                 std::holds_alternative<If>(tail->else_body[0].node)) {
            tail = &std::get<If>(tail->else_body[0].node);
            out += pad + "elif " + PrintExpr(*tail->cond) + ":\n";
            PrintBlock(tail->then_body, indent + 2, out);
          }
          if (!tail->else_body.empty()) {
            out += pad + "else:\n";
            PrintBlock(tail->else_body, indent + 2, out);
          }
        } else if constexpr (std::is_same_v<T, Return>) {
          out += pad + "return";
          if (s.value) out += " " + PrintExpr(*s.value);
          out += "\n";
        } else if constexpr (std::is_same_v<T, Assert>) {
          out += pad + "assert " + PrintExpr(*s.cond) + "\n";
        } else {
          out += pad + PrintExpr(*s.expr) + "\n";
        }
      },
      stmt.node);
}

void PrintBlock(const Block& block, int indent, std::string& out) {
  for (const Stmt& stmt : block) PrintStmt(stmt, indent, out);
}

std::string JoinArgs(const std::vector<ExprPtr>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += PrintExpr(*args[i]);
  }
  return out;
}

}  // namespace

std::string PrintExpr(const Expr& expr) {
  return std::visit(
      [&](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return e.value.ToString();
        } else if constexpr (std::is_same_v<T, Variable>) {
          return e.name;
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (e.op == UnaryOp::kNot) {
            return "not " + Wrap(*e.operand, PrecOf(*e.operand) < kNot);
          }
          return "-" + Wrap(*e.operand, PrecOf(*e.operand) < kNegate);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return BinaryText(e.op, *e.lhs, *e.rhs);
        } else if constexpr (std::is_same_v<T, Logical>) {
          int p = e.op == LogicalOp::kOr ? kOr : kAnd;
          return Wrap(*e.lhs, PrecOf(*e.lhs) < p) + " " +
                 std::string(Spelling(e.op)) + " " +
                 Wrap(*e.rhs, PrecOf(*e.rhs) <= p);
        } else if constexpr (std::is_same_v<T, Call>) {
          return e.callee + "(" + JoinArgs(e.args) + ")";
        } else if constexpr (std::is_same_v<T, ListLiteral>) {
          return "[" + JoinArgs(e.elements) + "]";
        } else if constexpr (std::is_same_v<T, Subscript>) {
          return Wrap(*e.container, PrecOf(*e.container) < kPostfix) + "[" +
                 PrintExpr(*e.index) + "]";
        } else if constexpr (std::is_same_v<T, TaintChoice>) {
          std::string out =
              "@T(<M0: " + BinaryText(e.original, *e.lhs, *e.rhs) + ">";
          for (const auto& [id, op] : e.variants) {
            out += ", <" + ToString(id) + ": " +
                   BinaryText(op, *e.lhs, *e.rhs) + ">";
          }
          return out + ")";
        } else {
          return "@C(" + PrintExpr(*e.cond) + ")";
        }
      },
      expr.node);
}

std::string PrintProgram(const Program& program) {
  std::string out;
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    const FunctionDef& fn = program.functions[i];
    if (i) out += "\n\n";
    out += "def " + fn.name + "(";
    for (std::size_t p = 0; p < fn.params.size(); ++p) {
      if (p) out += ", ";
      out += fn.params[p];
    }
    out += "):\n";
    PrintBlock(fn.body, 2, out);
    if (fn.wrapped) out += "$" + fn.name + " = wrap(" + fn.name + ")\n";
  }
  return out;
}

}  // namespace mutlab
