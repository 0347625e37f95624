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

#include "mutlab/mutagen.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <variant>

namespace mutlab {
namespace {

// Rebuilds a program bottom-up. Hooks receive already rewritten operands
// together with the pre-order ordinal of the node among nodes of its kind.
class Rewriter {
 public:
  virtual ~Rewriter() = default;

  Program Run(const Program& program) {
    Program out;
    for (const FunctionDef& fn : program.functions) {
      FunctionDef copy = fn;
      copy.body = RewriteBlock(fn.body);
      copy.wrapped = Wrap(fn);
      out.functions.push_back(std::move(copy));
    }
    return out;
  }

 protected:
  virtual bool Wrap(const FunctionDef& fn) { return fn.wrapped; }

  virtual ExprPtr OnBinary(int /*ordinal*/, const Expr& e, const Binary& b,
                           ExprPtr lhs, ExprPtr rhs) {
    return MakeExpr(e.loc, Binary{b.op, std::move(lhs), std::move(rhs)});
  }

  virtual ExprPtr OnChoice(int /*ordinal*/, const Expr& e,
                           const TaintChoice& c, ExprPtr lhs, ExprPtr rhs) {
    TaintChoice copy = c;
    copy.lhs = std::move(lhs);
    copy.rhs = std::move(rhs);
    return MakeExpr(e.loc, std::move(copy));
  }

  virtual ExprPtr OnCondition(const Expr& e, ExprPtr cond) {
    return MakeExpr(e.loc, TaintedCond{std::move(cond)});
  }

  // Called for `if`/`while` conditions that are not yet probes.
  virtual ExprPtr OnBranchCondition(ExprPtr cond) { return cond; }

 private:
  Block RewriteBlock(const Block& block) {
    Block out;
    out.reserve(block.size());
    for (const Stmt& stmt : block) out.push_back(RewriteStmt(stmt));
    return out;
  }

  ExprPtr RewriteCondition(const ExprPtr& cond) {
    ExprPtr rewritten = Rewrite(cond);
    if (std::holds_alternative<TaintedCond>(rewritten->node)) return rewritten;
    return OnBranchCondition(std::move(rewritten));
  }

  Stmt RewriteStmt(const Stmt& stmt) {
    Stmt out{stmt.loc, stmt.node};
    std::visit(
        [&](auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Assign> ||
                        std::is_same_v<T, AugAssign>) {
            s.value = Rewrite(s.value);
          } else if constexpr (std::is_same_v<T, While>) {
            s.cond = RewriteCondition(s.cond);
            s.body = RewriteBlock(s.body);
          } else if constexpr (std::is_same_v<T, If>) {
            s.cond = RewriteCondition(s.cond);
            s.then_body = RewriteBlock(s.then_body);
            s.else_body = RewriteBlock(s.else_body);
          } else if constexpr (std::is_same_v<T, Return>) {
            if (s.value) s.value = Rewrite(s.value);
          } else if constexpr (std::is_same_v<T, Assert>) {
            s.cond = Rewrite(s.cond);
          } else {
            s.expr = Rewrite(s.expr);
          }
        },
        out.node);
    return out;
  }

  std::vector<ExprPtr> RewriteAll(const std::vector<ExprPtr>& exprs) {
    std::vector<ExprPtr> out;
    out.reserve(exprs.size());
    for (const ExprPtr& e : exprs) out.push_back(Rewrite(e));
    return out;
  }

  ExprPtr Rewrite(const ExprPtr& expr) {
    const Expr& e = *expr;
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Literal> ||
                        std::is_same_v<T, Variable>) {
            return expr;
          } else if constexpr (std::is_same_v<T, Unary>) {
            return MakeExpr(e.loc, Unary{n.op, Rewrite(n.operand)});
          } else if constexpr (std::is_same_v<T, Binary>) {
            int ordinal = binaries_++;
            ExprPtr lhs = Rewrite(n.lhs);
            ExprPtr rhs = Rewrite(n.rhs);
            return OnBinary(ordinal, e, n, std::move(lhs), std::move(rhs));
          } else if constexpr (std::is_same_v<T, TaintChoice>) {
            int ordinal = choices_++;
            ExprPtr lhs = Rewrite(n.lhs);
            ExprPtr rhs = Rewrite(n.rhs);
            return OnChoice(ordinal, e, n, std::move(lhs), std::move(rhs));
          } else if constexpr (std::is_same_v<T, Logical>) {
            ExprPtr lhs = Rewrite(n.lhs);
            return MakeExpr(e.loc, Logical{n.op, lhs, Rewrite(n.rhs)});
          } else if constexpr (std::is_same_v<T, Call>) {
            return MakeExpr(e.loc, Call{n.callee, RewriteAll(n.args)});
          } else if constexpr (std::is_same_v<T, ListLiteral>) {
            return MakeExpr(e.loc, ListLiteral{RewriteAll(n.elements)});
          } else if constexpr (std::is_same_v<T, Subscript>) {
            ExprPtr container = Rewrite(n.container);
            return MakeExpr(e.loc, Subscript{container, Rewrite(n.index)});
          } else {
            return OnCondition(e, Rewrite(n.cond));
          }
        },
        e.node);
  }

  int binaries_ = 0;
  int choices_ = 0;
};

class PointCollector : public Rewriter {
 public:
  std::vector<MutationPoint> points;

 protected:
  ExprPtr OnBinary(int ordinal, const Expr& e, const Binary& b, ExprPtr lhs,
                   ExprPtr rhs) override {
    MutationPoint p;
    p.id = ordinal;
    p.loc = e.loc;
    p.original = b.op;
    p.op_class =
        IsComparison(b.op) ? OpClass::kComparison : OpClass::kArithmetic;
    std::span<const BinaryOp> catalog =
        p.op_class == OpClass::kComparison ? std::span<const BinaryOp>(
                                                 kComparisonOps)
                                           : std::span<const BinaryOp>(
                                                 kArithmeticOps);
    for (BinaryOp op : catalog) {
      if (op != b.op) p.replacements.push_back(op);
    }
    points.push_back(std::move(p));
    return Rewriter::OnBinary(ordinal, e, b, std::move(lhs), std::move(rhs));
  }
};

class MetaBuilder : public Rewriter {
 public:
  MetaBuilder(std::span<const MutationPoint> points,
              std::span<const MutantInfo> mutants)
      : points_(points) {
    variants_.resize(points.size());
    for (const MutantInfo& m : mutants) {
      variants_[m.point].emplace_back(m.id, m.replacement);
    }
  }

 protected:
  bool Wrap(const FunctionDef& fn) override { return !fn.is_test(); }

  ExprPtr OnBinary(int ordinal, const Expr& e, const Binary& b, ExprPtr lhs,
                   ExprPtr rhs) override {
    if (ordinal >= static_cast<int>(points_.size()) ||
        points_[ordinal].original != b.op || points_[ordinal].loc != e.loc) {
      throw std::invalid_argument("mutation points do not match the program");
    }
    TaintChoice choice;
    choice.point = ordinal;
    choice.original = b.op;
    choice.lhs = std::move(lhs);
    choice.rhs = std::move(rhs);
    choice.variants = variants_[ordinal];
    return MakeExpr(e.loc, std::move(choice));
  }

  ExprPtr OnBranchCondition(ExprPtr cond) override {
    Location loc = cond->loc;
    return MakeExpr(loc, TaintedCond{std::move(cond)});
  }

 private:
  std::span<const MutationPoint> points_;
  std::vector<std::vector<std::pair<MutantId, BinaryOp>>> variants_;
};

class Restrictor : public Rewriter {
 public:
  explicit Restrictor(const std::set<MutantId>& keep) : keep_(keep) {}

 protected:
  ExprPtr OnChoice(int ordinal, const Expr& e, const TaintChoice& c,
                   ExprPtr lhs, ExprPtr rhs) override {
    TaintChoice copy = c;
    std::erase_if(copy.variants,
                  [&](const auto& v) { return !keep_.contains(v.first); });
    return Rewriter::OnChoice(ordinal, e, copy, std::move(lhs),
                              std::move(rhs));
  }

 private:
  const std::set<MutantId>& keep_;
};

class Selector : public Rewriter {
 public:
  Selector(const std::map<MutantId, MutantId>& renumber,
           std::vector<int>& point_renumber)
      : renumber_(renumber), point_renumber_(point_renumber) {}

 protected:
  ExprPtr OnChoice(int, const Expr& e, const TaintChoice& c, ExprPtr lhs,
                   ExprPtr rhs) override {
    TaintChoice copy = c;
    copy.variants.clear();
    for (const auto& [id, op] : c.variants) {
      auto it = renumber_.find(id);
      if (it != renumber_.end()) copy.variants.emplace_back(it->second, op);
    }
    if (copy.variants.empty()) {
      return MakeExpr(e.loc, Binary{c.original, std::move(lhs),
                                    std::move(rhs)});
    }
    std::sort(copy.variants.begin(), copy.variants.end());
    copy.point = point_renumber_[c.point];
    copy.lhs = std::move(lhs);
    copy.rhs = std::move(rhs);
    return MakeExpr(e.loc, std::move(copy));
  }

 private:
  const std::map<MutantId, MutantId>& renumber_;
  std::vector<int>& point_renumber_;
};

class Eraser : public Rewriter {
 protected:
  bool Wrap(const FunctionDef&) override { return false; }

  ExprPtr OnChoice(int, const Expr& e, const TaintChoice& c, ExprPtr lhs,
                   ExprPtr rhs) override {
    return MakeExpr(e.loc, Binary{c.original, std::move(lhs), std::move(rhs)});
  }

  ExprPtr OnCondition(const Expr&, ExprPtr cond) override { return cond; }
};

}  // namespace

std::vector<MutationPoint> DiscoverMutationPoints(const Program& program) {
  PointCollector collector;
  collector.Run(program);
  std::sort(collector.points.begin(), collector.points.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return std::move(collector.points);
}

std::vector<MutantInfo> EnumerateMutants(
    std::span<const MutationPoint> points) {
  std::vector<MutantInfo> mutants;
  for (const MutationPoint& p : points) {
    for (BinaryOp op : p.replacements) {
      mutants.push_back(
          {Mutant(static_cast<int>(mutants.size()) + 1), p.id, op});
    }
  }
  return mutants;
}

MetaProgram GenerateMetaMutant(const Program& program,
                               std::span<const MutationPoint> points) {
  MetaProgram meta;
  meta.points.assign(points.begin(), points.end());
  meta.mutants = EnumerateMutants(points);
  MetaBuilder builder(meta.points, meta.mutants);
  meta.program = builder.Run(program);
  return meta;
}

MetaProgram BuildMetaMutant(const Program& program) {
  return GenerateMetaMutant(program, DiscoverMutationPoints(program));
}

MetaProgram RestrictMeta(const MetaProgram& meta,
                         const std::set<MutantId>& keep) {
  Restrictor restrictor(keep);
  MetaProgram out;
  out.program = restrictor.Run(meta.program);
  out.points = meta.points;
  out.mutants = meta.mutants;
  return out;
}

MetaProgram SelectMutants(const MetaProgram& meta,
                          std::span<const MutantId> chosen) {
  std::map<MutantId, MutantId> renumber;
  MetaProgram out;
  for (MutantId old_id : chosen) {
    MutantInfo info = meta.info(old_id);
    info.id = Mutant(static_cast<int>(renumber.size()) + 1);
    renumber.emplace(old_id, info.id);
    out.mutants.push_back(info);
  }
  std::vector<int> point_renumber(meta.points.size(), -1);
  for (const MutationPoint& p : meta.points) {
    MutationPoint kept = p;
    kept.replacements.clear();
    for (const MutantInfo& m : out.mutants) {
      if (m.point == p.id) kept.replacements.push_back(m.replacement);
    }
    if (kept.replacements.empty()) continue;
    kept.id = static_cast<int>(out.points.size());
    point_renumber[p.id] = kept.id;
    out.points.push_back(std::move(kept));
  }
  for (MutantInfo& m : out.mutants) m.point = point_renumber[m.point];
  Selector selector(renumber, point_renumber);
  out.program = selector.Run(meta.program);
  return out;
}

Program EraseMeta(const Program& meta) {
  Eraser eraser;
  return eraser.Run(meta);
}

std::string FormatMutantList(const MetaProgram& meta) {
  std::string out;
  for (const MutantInfo& m : meta.mutants) {
    const MutationPoint& p = meta.points[m.point];
    out += ToString(m.id) + " " + ToString(p.loc) + " " +
           std::string(Spelling(p.original)) + " -> " +
           std::string(Spelling(m.replacement)) + "\n";
  }
  return out;
}

}  // namespace mutlab
