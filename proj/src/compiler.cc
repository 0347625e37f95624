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

#include <algorithm>
#include <map>
#include <type_traits>
#include <variant>

#include "mutlab/bytecode.h"

namespace mutlab {

BinaryOp Site::OpFor(MutantId m) const {
  for (const auto& [id, op] : variants) {
    if (id == m) return op;
  }
  return original;
}

int CompiledProgram::Find(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

BranchTarget TargetFor(const Instr& instr, int pc, bool decision) {
  switch (instr.op) {
    case OpCode::kJumpIfFalse:
      return {decision ? pc + 1 : instr.a, false};
    case OpCode::kJumpIfFalseKeep:
      return decision ? BranchTarget{pc + 1, false}
                      : BranchTarget{instr.a, true};
    case OpCode::kJumpIfTrueKeep:
      return decision ? BranchTarget{instr.a, true}
                      : BranchTarget{pc + 1, false};
    default:
      return {pc + 1, false};
  }
}

namespace {

class FunctionCompiler {
 public:
  FunctionCompiler(const Program& program, CompiledProgram& out,
                   CompiledFunction& fn)
      : program_(program), out_(out), fn_(fn) {}

  void CompileBody(const FunctionDef& def) {
    for (const std::string& param : def.params) Slot(param);
    CompileBlock(def.body);
    Emit(OpCode::kReturnNone, 0, 0, def.loc);
  }

 private:
  int Emit(OpCode op, int a, int b, Location loc) {
    fn_.code.push_back({op, a, b, loc});
    return static_cast<int>(fn_.code.size()) - 1;
  }

  int Here() const { return static_cast<int>(fn_.code.size()); }

  void Patch(int at, int target) { fn_.code[at].a = target; }

  int Slot(const std::string& name) {
    auto it = slots_.find(name);
    if (it != slots_.end()) return it->second;
    int slot = static_cast<int>(fn_.slot_names.size());
    fn_.slot_names.push_back(name);
    slots_.emplace(name, slot);
    return slot;
  }

  int Const(const Value& v) {
    out_.consts.push_back(v);
    return static_cast<int>(out_.consts.size()) - 1;
  }

  void CompileBlock(const Block& block) {
    for (const Stmt& stmt : block) CompileStmt(stmt);
  }

  void CompileStmt(const Stmt& stmt) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, While>) {
            int top = Emit(OpCode::kStmt, 0, 0, stmt.loc);
            CompileExpr(*s.cond);
            int exit = Emit(OpCode::kJumpIfFalse, 0, 0, s.cond->loc);
            CompileBlock(s.body);
            Emit(OpCode::kJump, top, 0, stmt.loc);
            Patch(exit, Here());
            return;
          }
          Emit(OpCode::kStmt, 0, 0, stmt.loc);
          if constexpr (std::is_same_v<T, Assign>) {
            CompileExpr(*s.value);
            Emit(OpCode::kStore, Slot(s.target), 0, stmt.loc);
          } else if constexpr (std::is_same_v<T, AugAssign>) {
            Emit(OpCode::kLoad, Slot(s.target), 0, stmt.loc);
            CompileExpr(*s.value);
            Emit(OpCode::kBinary, static_cast<int>(s.op), 0, s.op_loc);
            Emit(OpCode::kStore, Slot(s.target), 0, stmt.loc);
          } else if constexpr (std::is_same_v<T, If>) {
            CompileExpr(*s.cond);
            int to_else = Emit(OpCode::kJumpIfFalse, 0, 0, s.cond->loc);
            CompileBlock(s.then_body);
            int to_end = Emit(OpCode::kJump, 0, 0, stmt.loc);
            Patch(to_else, Here());
            CompileBlock(s.else_body);
            Patch(to_end, Here());
          } else if constexpr (std::is_same_v<T, Return>) {
            if (s.value) {
              CompileExpr(*s.value);
              Emit(OpCode::kReturn, 0, 0, stmt.loc);
            } else {
              Emit(OpCode::kReturnNone, 0, 0, stmt.loc);
            }
          } else if constexpr (std::is_same_v<T, Assert>) {
            CompileExpr(*s.cond);
            Emit(OpCode::kAssert, 0, 0, stmt.loc);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            CompileExpr(*s.expr);
            Emit(OpCode::kPop, 0, 0, stmt.loc);
          }
        },
        stmt.node);
  }

  void CompileExpr(const Expr& expr) {
    Location loc = expr.loc;
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Literal>) {
            Emit(OpCode::kConst, Const(e.value), 0, loc);
          } else if constexpr (std::is_same_v<T, Variable>) {
            Emit(OpCode::kLoad, Slot(e.name), 0, loc);
          } else if constexpr (std::is_same_v<T, Unary>) {
            CompileExpr(*e.operand);
            Emit(OpCode::kUnary, static_cast<int>(e.op), 0, loc);
          } else if constexpr (std::is_same_v<T, Binary>) {
            CompileExpr(*e.lhs);
            CompileExpr(*e.rhs);
            Emit(OpCode::kBinary, static_cast<int>(e.op), 0, loc);
          } else if constexpr (std::is_same_v<T, TaintChoice>) {
            CompileExpr(*e.lhs);
            CompileExpr(*e.rhs);
            out_.sites.push_back({e.point, e.original, e.variants});
            out_.point_count = std::max(out_.point_count, e.point + 1);
            Emit(OpCode::kSite, static_cast<int>(out_.sites.size()) - 1, 0,
                 loc);
          } else if constexpr (std::is_same_v<T, TaintedCond>) {
            CompileExpr(*e.cond);
          } else if constexpr (std::is_same_v<T, Logical>) {
            CompileExpr(*e.lhs);
            Emit(OpCode::kToBool, 0, 0, e.lhs->loc);
            int jump = Emit(e.op == LogicalOp::kAnd ? OpCode::kJumpIfFalseKeep
                                                    : OpCode::kJumpIfTrueKeep,
                            0, 0, e.lhs->loc);
            CompileExpr(*e.rhs);
            Emit(OpCode::kToBool, 0, 0, e.rhs->loc);
            Patch(jump, Here());
          } else if constexpr (std::is_same_v<T, Call>) {
            for (const ExprPtr& arg : e.args) CompileExpr(*arg);
            int argc = static_cast<int>(e.args.size());
            if (program_.Find(e.callee) != nullptr) {
              int index = 0;
              while (program_.functions[index].name != e.callee) ++index;
              Emit(OpCode::kCall, index, argc, loc);
            } else if (auto builtin = LookupBuiltin(e.callee)) {
              Emit(OpCode::kBuiltin, static_cast<int>(*builtin), argc, loc);
            } else {
              out_.names.push_back(e.callee);
              Emit(OpCode::kCallUnknown,
                   static_cast<int>(out_.names.size()) - 1, argc, loc);
            }
          } else if constexpr (std::is_same_v<T, ListLiteral>) {
            for (const ExprPtr& el : e.elements) CompileExpr(*el);
            Emit(OpCode::kList, 0, static_cast<int>(e.elements.size()), loc);
          } else if constexpr (std::is_same_v<T, Subscript>) {
            CompileExpr(*e.container);
            CompileExpr(*e.index);
            Emit(OpCode::kIndex, 0, 0, loc);
          }
        },
        expr.node);
  }

  const Program& program_;
  CompiledProgram& out_;
  CompiledFunction& fn_;
  std::map<std::string, int> slots_;
};

}  // namespace

CompiledProgram Compile(const Program& program) {
  CompiledProgram out;
  out.functions.resize(program.functions.size());
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    const FunctionDef& def = program.functions[i];
    CompiledFunction& fn = out.functions[i];
    fn.name = def.name;
    fn.arity = static_cast<int>(def.params.size());
    fn.loc = def.loc;
    fn.is_test = def.is_test();
    FunctionCompiler(program, out, fn).CompileBody(def);
  }
  return out;
}

}  // namespace mutlab
