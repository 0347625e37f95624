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

// Stack-machine form of a (meta) program. Execution state is a flat list of
// frames holding a program counter, slots and an operand stack, so an
// execution can be copied at any instruction.

#ifndef MUTLAB_BYTECODE_H_
#define MUTLAB_BYTECODE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mutlab/ast.h"

namespace mutlab {

enum class OpCode : std::uint8_t {
  kStmt,          // start of a statement
  kConst,         // push consts[a]
  kLoad,          // push slot a
  kStore,         // pop into slot a
  kBinary,        // pop rhs, lhs; push lhs op(a) rhs
  kSite,          // pop rhs, lhs; push the result of sites[a]
  kUnary,         // apply UnaryOp a
  kToBool,        // require the top to be Bool
  kCall,          // call functions[a] with b arguments
  kBuiltin,       // call Builtin a with b arguments
  kCallUnknown,   // pop b arguments, fail: names[a] is not a function
  kList,          // pop b elements, push a list
  kIndex,         // pop index, container; push element
  kJumpIfFalse,   // pop a Bool; jump to a when false
  kJumpIfFalseKeep,  // `and`: jump to a keeping the Bool when false
  kJumpIfTrueKeep,   // `or`: jump to a keeping the Bool when true
  kJump,          // jump to a
  kReturn,        // pop the return value
  kReturnNone,
  kAssert,        // pop a Bool; fail when false
  kPop,
};

struct Instr {
  OpCode op;
  std::int32_t a = 0;
  std::int32_t b = 0;
  Location loc;
};

struct Site {
  int point = 0;
  BinaryOp original = BinaryOp::kAdd;
  std::vector<std::pair<MutantId, BinaryOp>> variants;

  BinaryOp OpFor(MutantId m) const;
};

struct CompiledFunction {
  std::string name;
  int arity = 0;
  std::vector<std::string> slot_names;  // parameters first
  std::vector<Instr> code;
  Location loc;
  bool is_test = false;
};

struct CompiledProgram {
  std::vector<CompiledFunction> functions;
  std::vector<Site> sites;
  std::vector<Value> consts;
  std::vector<std::string> names;
  int point_count = 0;  // one past the largest point id

  int Find(std::string_view name) const;  // -1 when absent
};

CompiledProgram Compile(const Program& program);

// Where execution continues after a conditional jump at `instr` takes
// `decision`, and whether the Bool stays on the stack.
struct BranchTarget {
  int pc;
  bool keep_value;
};
BranchTarget TargetFor(const Instr& instr, int pc, bool decision);

}  // namespace mutlab

#endif  // MUTLAB_BYTECODE_H_
