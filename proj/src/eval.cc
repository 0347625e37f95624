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

#include "mutlab/eval.h"

#include <optional>
#include <unordered_map>
#include <vector>

namespace mutlab {

const char* OutcomeKindName(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kPass:
      return "pass";
    case OutcomeKind::kAssertionFailure:
      return "assertion";
    case OutcomeKind::kRuntimeException:
      return "exception";
    case OutcomeKind::kTimeout:
      return "timeout";
  }
  return "?";
}

namespace {

struct AssertionSignal {
  Location loc;
};
struct TimeoutSignal {};

using Env = std::unordered_map<std::string, Value>;

class PlainEvaluator {
 public:
  PlainEvaluator(const Program& program, const PlainOptions& options,
                 PlainResult& result)
      : program_(program), options_(options), result_(result) {}

  Value CallFunction(const FunctionDef& fn, std::vector<Value> args,
                     Location loc) {
    if (args.size() != fn.params.size()) {
      throw EvalError(ErrorKind::kArity,
                      fn.name + "() takes " + std::to_string(fn.params.size()) +
                          " argument(s), got " + std::to_string(args.size()),
                      loc);
    }
    if (depth_ >= kMaxCallDepth) {
      throw EvalError(ErrorKind::kRecursion, "maximum call depth exceeded",
                      loc);
    }
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i) {
      env[fn.params[i]] = std::move(args[i]);
    }
    ++depth_;
    std::optional<Value> ret = ExecBlock(fn.body, env);
    --depth_;
    return ret ? std::move(*ret) : Value::None();
  }

 private:
  void Tick() {
    if (++result_.statements > options_.step_budget) throw TimeoutSignal{};
  }

  std::optional<Value> ExecBlock(const Block& block, Env& env) {
    for (const Stmt& stmt : block) {
      if (auto ret = ExecStmt(stmt, env)) return ret;
    }
    return std::nullopt;
  }

  std::optional<Value> ExecStmt(const Stmt& stmt, Env& env) {
    if (std::holds_alternative<While>(stmt.node)) {
      const While& w = std::get<While>(stmt.node);
      while (true) {
        Tick();
        if (!Condition(*w.cond, env)) return std::nullopt;
        if (auto ret = ExecBlock(w.body, env)) return ret;
      }
    }
    Tick();
    return std::visit(
        [&](const auto& s) -> std::optional<Value> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Assign>) {
            env[s.target] = Eval(*s.value, env);
          } else if constexpr (std::is_same_v<T, AugAssign>) {
            Value current = Lookup(s.target, env, stmt.loc);
            Value rhs = Eval(*s.value, env);
            env[s.target] = Apply(s.op, current, rhs, s.op_loc);
          } else if constexpr (std::is_same_v<T, If>) {
            const Block& branch =
                Condition(*s.cond, env) ? s.then_body : s.else_body;
            return ExecBlock(branch, env);
          } else if constexpr (std::is_same_v<T, Return>) {
            return s.value ? Eval(*s.value, env) : Value::None();
          } else if constexpr (std::is_same_v<T, Assert>) {
            if (!Condition(*s.cond, env)) throw AssertionSignal{stmt.loc};
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            Eval(*s.expr, env);
          }
          return std::nullopt;
        },
        stmt.node);
  }

  bool Condition(const Expr& e, const Env& env) {
    Value v = Eval(e, env);
    try {
      return RequireBool(v);
    } catch (const EvalError& err) {
      throw err.At(e.loc);
    }
  }

  static Value Apply(BinaryOp op, const Value& lhs, const Value& rhs,
                     Location loc) {
    try {
      return ApplyBinary(op, lhs, rhs);
    } catch (const EvalError& err) {
      throw err.At(loc);
    }
  }

  static Value Lookup(const std::string& name, const Env& env, Location loc) {
    auto it = env.find(name);
    if (it == env.end()) {
      throw EvalError(ErrorKind::kName, "name '" + name + "' is not defined",
                      loc);
    }
    return it->second;
  }

  Value Eval(const Expr& expr, const Env& env) {
    Location loc = expr.loc;
    return std::visit(
        [&](const auto& e) -> Value {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Literal>) {
            return e.value;
          } else if constexpr (std::is_same_v<T, Variable>) {
            return Lookup(e.name, env, loc);
          } else if constexpr (std::is_same_v<T, Unary>) {
            Value v = Eval(*e.operand, env);
            try {
              return ApplyUnary(e.op, v);
            } catch (const EvalError& err) {
              throw err.At(loc);
            }
          } else if constexpr (std::is_same_v<T, Binary>) {
            Value lhs = Eval(*e.lhs, env);
            Value rhs = Eval(*e.rhs, env);
            return Apply(e.op, lhs, rhs, loc);
          } else if constexpr (std::is_same_v<T, TaintChoice>) {
            if (options_.track_coverage) result_.covered_points.insert(e.point);
            Value lhs = Eval(*e.lhs, env);
            Value rhs = Eval(*e.rhs, env);
            return Apply(e.OpFor(options_.selected), lhs, rhs, loc);
          } else if constexpr (std::is_same_v<T, TaintedCond>) {
            return Eval(*e.cond, env);
          } else if constexpr (std::is_same_v<T, Logical>) {
            bool lhs = Condition(*e.lhs, env);
            if (e.op == LogicalOp::kAnd ? !lhs : lhs) return Value::Bool(lhs);
            return Value::Bool(Condition(*e.rhs, env));
          } else if constexpr (std::is_same_v<T, Call>) {
            std::vector<Value> args;
            args.reserve(e.args.size());
            for (const ExprPtr& arg : e.args) args.push_back(Eval(*arg, env));
            if (const FunctionDef* fn = program_.Find(e.callee)) {
              return CallFunction(*fn, std::move(args), loc);
            }
            if (auto builtin = LookupBuiltin(e.callee)) {
              try {
                return CallBuiltin(*builtin, args);
              } catch (const EvalError& err) {
                throw err.At(loc);
              }
            }
            throw EvalError(ErrorKind::kName,
                            "function '" + e.callee + "' is not defined", loc);
          } else if constexpr (std::is_same_v<T, ListLiteral>) {
            std::vector<Value> elements;
            elements.reserve(e.elements.size());
            for (const ExprPtr& el : e.elements) {
              elements.push_back(Eval(*el, env));
            }
            return Value::List(std::move(elements));
          } else {
            Value container = Eval(*e.container, env);
            Value index = Eval(*e.index, env);
            try {
              return ApplyIndex(container, index);
            } catch (const EvalError& err) {
              throw err.At(loc);
            }
          }
        },
        expr.node);
  }

  const Program& program_;
  const PlainOptions& options_;
  PlainResult& result_;
  int depth_ = 0;
};

PlainResult Run(const Program& program, std::string_view fn_name,
                std::vector<Value> args, const PlainOptions& options) {
  PlainResult result;
  const FunctionDef* fn = program.Find(fn_name);
  if (fn == nullptr) {
    result.outcome.kind = OutcomeKind::kRuntimeException;
    result.outcome.error = ErrorKind::kName;
    result.outcome.message = "function '" + std::string(fn_name) +
                             "' is not defined";
    return result;
  }
  PlainEvaluator evaluator(program, options, result);
  try {
    result.outcome.value = evaluator.CallFunction(*fn, std::move(args), fn->loc);
  } catch (const AssertionSignal& signal) {
    result.outcome.kind = OutcomeKind::kAssertionFailure;
    result.outcome.loc = signal.loc;
  } catch (const TimeoutSignal&) {
    result.outcome.kind = OutcomeKind::kTimeout;
  } catch (const EvalError& err) {
    result.outcome.kind = OutcomeKind::kRuntimeException;
    result.outcome.loc = err.location();
    result.outcome.error = err.kind();
    result.outcome.message = err.what();
  }
  return result;
}

}  // namespace

PlainResult EvalPlain(const Program& program, std::string_view entry,
                      const std::map<std::string, Value>& env,
                      const PlainOptions& options) {
  std::vector<Value> args;
  if (const FunctionDef* fn = program.Find(entry)) {
    for (const std::string& param : fn->params) {
      auto it = env.find(param);
      if (it == env.end()) {
        PlainResult result;
        result.outcome.kind = OutcomeKind::kRuntimeException;
        result.outcome.error = ErrorKind::kArity;
        result.outcome.message = "parameter '" + param + "' is unbound";
        return result;
      }
      args.push_back(it->second);
    }
  }
  return Run(program, entry, std::move(args), options);
}

PlainResult EvalPlainCall(const Program& program, std::string_view fn,
                          std::span<const Value> args,
                          const PlainOptions& options) {
  return Run(program, fn, std::vector<Value>(args.begin(), args.end()),
             options);
}

}  // namespace mutlab
