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

#include "mutlab/engine.h"

#include <algorithm>
#include <deque>
#include <iterator>
#include <memory>
#include <optional>
#include <utility>

#include "mutlab/taint.h"

namespace mutlab {

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kKilledAssertion:
    case Verdict::kKilledException:
    case Verdict::kKilledTimeout:
      return "killed";
    case Verdict::kSurvived:
      return "survived";
    case Verdict::kNotCovered:
      return "not_covered";
  }
  return "?";
}

const char* KillCause(Verdict v) {
  switch (v) {
    case Verdict::kKilledAssertion:
      return "assertion";
    case Verdict::kKilledException:
      return "exception";
    case Verdict::kKilledTimeout:
      return "timeout";
    default:
      return "";
  }
}

bool IsKilled(Verdict v) {
  return v == Verdict::kKilledAssertion || v == Verdict::kKilledException ||
         v == Verdict::kKilledTimeout;
}

namespace {

constexpr int kNoKey = -1;

struct TimeoutSignal {};
struct AssertionSignal {
  Location loc;
};
// Every mutant of a modulo-state context was killed.
struct DeadSignal {};

using Offsets = std::vector<std::pair<MutantId, std::int64_t>>;

std::int64_t OffsetIn(const Offsets& offsets, MutantId m) {
  for (const auto& [id, off] : offsets) {
    if (id == m) return off;
  }
  return 0;
}

struct Frame {
  int fn = 0;
  int pc = 0;
  int depth = 0;
  std::vector<TaintedValue> slots;
  std::vector<bool> bound;
  std::vector<TaintedValue> stack;
  std::vector<TaintedValue> args;
  std::int64_t entry_virtual = 0;
  Offsets entry_offsets;
  int key = kNoKey;
  std::vector<std::pair<MutantId, int>> tainted_keys;
  std::uint64_t epoch = 0;
  bool store = true;
  int max_depth = 0;
  MutantSet wounded;
  std::vector<bool> recorded;
  std::uint64_t recorded_gen = 0;

  TaintedValue Pop() {
    TaintedValue v = std::move(stack.back());
    stack.pop_back();
    return v;
  }
};

struct Context {
  MutantId mainline = MutantId::kOriginal;
  bool root = false;
  MutantSet active;
  std::vector<Frame> frames;
  int base_depth = 0;
  std::vector<int> outer_keys;
  std::vector<bool> outer_recorded;
  std::uint64_t outer_gen = 0;
  std::int64_t virtual_stmts = 0;
};

struct PendingChild {
  MutantId mutant;
  std::unique_ptr<Context> context;
};

struct Finish {
  OutcomeKind kind = OutcomeKind::kPass;
  TaintedValue value;
  TestOutcome outcome;
  bool dead = false;
};

Verdict VerdictFor(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kPass:
      return Verdict::kSurvived;
    case OutcomeKind::kAssertionFailure:
      return Verdict::kKilledAssertion;
    case OutcomeKind::kRuntimeException:
      return Verdict::kKilledException;
    case OutcomeKind::kTimeout:
      return Verdict::kKilledTimeout;
  }
  return Verdict::kSurvived;
}

class Machine {
 public:
  Machine(const MetaProgram& meta, const CompiledProgram& code,
          const EngineOptions& options)
      : meta_(meta),
        code_(code),
        options_(options),
        tainting_mode_(options.mode == EngineMode::kExecTaints),
        memo_enabled_(tainting_mode_ && options.memo),
        memo_(PointOf(meta)),
        verdicts_(meta.mutant_count()),
        split_done_(std::max(code.point_count, 1), false) {}

  TestRun Run(std::string_view test);

 private:
  static std::vector<int> PointOf(const MetaProgram& meta) {
    std::vector<int> point_of(meta.mutant_count() + 1, -1);
    for (const MutantInfo& info : meta.mutants) {
      point_of[Index(info.id)] = info.point;
    }
    return point_of;
  }

  bool Tainting(const Context& ctx) const { return tainting_mode_ && ctx.root; }

  Finish Execute(Context& ctx);
  // Runs one instruction; returns true when the context's bottom frame
  // returned, leaving the value in `done`.
  bool Step(Context& ctx, TaintedValue& done);

  void Tick(Context& ctx);
  void CheckRiderTimeouts(Context& ctx);
  void Kill(MutantId m, Verdict verdict, Context* ctx = nullptr);
  void HandleFaults(Context& ctx);

  TaintedValue Binary(Context& ctx, const TaintedValue& a, BinaryOp op,
                      const TaintedValue& b);
  TaintedValue Lifted(Context& ctx, std::vector<TaintedValue> args,
                      const std::function<Value(std::span<const Value>)>& fn);
  TaintedValue ExecSite(Context& ctx, const Site& site, TaintedValue a,
                        TaintedValue b);
  TaintedValue SplitSite(Context& ctx, const Site& site, const Value& a,
                         const Value& b);
  TaintedValue ModuloSite(Context& ctx, const Site& site, const Value& a,
                          const Value& b);
  void Branch(Context& ctx, const Instr& in, int pc);
  void Diverge(Context& ctx, MutantId m, const Instr& in, int pc,
               bool decision);
  void Assert(Context& ctx, const TaintedValue& cond, Location loc);
  void RequireBoolTop(Context& ctx);
  void Call(Context& ctx, int fn, int argc);
  bool Return(Context& ctx, TaintedValue r, TaintedValue& done);
  void Merge(Context& ctx, MutantId m, Finish fin, Context& sub,
             TaintedValue& r);

  int KeyFor(const Frame& frame, MutantId m);
  int InternKey(int fn, std::span<const TaintedValue> args, MutantId m);
  void RecordSite(Context& ctx, int point);
  void Reactivate(Context& ctx, MutantId m, std::int64_t offset);
  void RecomputeMaxOffset(const Context& ctx);

  std::unique_ptr<Context> Snapshot(const Context& ctx, MutantId mainline);
  Frame NewFrame(const Context& ctx, int fn, std::vector<TaintedValue> args,
                 int depth);

  const MetaProgram& meta_;
  const CompiledProgram& code_;
  const EngineOptions& options_;
  bool tainting_mode_;
  bool memo_enabled_;

  Memo memo_;
  TaintSink sink_;
  std::vector<std::optional<Verdict>> verdicts_;
  std::vector<bool> split_done_;

  // Root bookkeeping.
  std::vector<std::vector<PendingChild>> pending_;  // by frame index
  Offsets offsets_;
  std::int64_t max_offset_ = 0;
  int unmerged_ = 0;
  std::uint64_t epoch_ = 1;
  std::uint64_t gen_ = 1;

  std::deque<std::unique_ptr<Context>> queue_;

  std::int64_t stmts_ = 0;
  std::int64_t infra_ = 0;
  std::int64_t executions_ = 0;
  std::int64_t merge_violations_ = 0;
};

void Machine::Kill(MutantId m, Verdict verdict, Context* ctx) {
  std::optional<Verdict>& slot = verdicts_[Index(m) - 1];
  if (!slot) slot = verdict;
  if (ctx != nullptr) ctx->active.erase(m);
}

void Machine::HandleFaults(Context& ctx) {
  if (sink_.faults().empty()) return;
  for (const Fault& fault : sink_.TakeFaults()) {
    Kill(fault.mutant, Verdict::kKilledException, &ctx);
  }
  RecomputeMaxOffset(ctx);
}

void Machine::RecomputeMaxOffset(const Context& ctx) {
  max_offset_ = 0;
  for (const auto& [m, off] : offsets_) {
    if (ctx.active.contains(m)) max_offset_ = std::max(max_offset_, off);
  }
}

void Machine::Tick(Context& ctx) {
  ++stmts_;
  if (++ctx.virtual_stmts > options_.budget) throw TimeoutSignal{};
  if (Tainting(ctx) && max_offset_ > 0 &&
      ctx.virtual_stmts + max_offset_ > options_.budget) {
    CheckRiderTimeouts(ctx);
  }
}

void Machine::CheckRiderTimeouts(Context& ctx) {
  for (const auto& [m, off] : offsets_) {
    if (ctx.active.contains(m) && ctx.virtual_stmts + off > options_.budget) {
      Kill(m, Verdict::kKilledTimeout, &ctx);
    }
  }
  RecomputeMaxOffset(ctx);
}

void Machine::Reactivate(Context& ctx, MutantId m, std::int64_t offset) {
  ctx.active.insert(m);
  auto it = std::find_if(offsets_.begin(), offsets_.end(),
                         [m](const auto& e) { return e.first == m; });
  if (offset == 0) {
    if (it != offsets_.end()) offsets_.erase(it);
  } else if (it != offsets_.end()) {
    it->second = offset;
  } else {
    offsets_.emplace_back(m, offset);
  }
  RecomputeMaxOffset(ctx);
  ++gen_;
}

int Machine::InternKey(int fn, std::span<const TaintedValue> args,
                       MutantId m) {
  CallKey key{fn, {}};
  key.args.reserve(args.size());
  for (const TaintedValue& arg : args) key.args.push_back(arg.Get(m));
  return memo_.keys().Intern(key);
}

int Machine::KeyFor(const Frame& frame, MutantId m) {
  for (const auto& [id, key] : frame.tainted_keys) {
    if (id == m) return key;
  }
  if (frame.key != kNoKey && frame.tainted_keys.empty()) return frame.key;
  return InternKey(frame.fn, frame.args, m);
}

void Machine::RecordSite(Context& ctx, int point) {
  for (std::size_t i = ctx.frames.size(); i-- > 0;) {
    Frame& f = ctx.frames[i];
    if (f.recorded_gen != gen_) {
      f.recorded.assign(split_done_.size(), false);
      f.recorded_gen = gen_;
    }
    if (f.recorded[point]) return;
    f.recorded[point] = true;
    if (f.key != kNoKey) {
      infra_ += memo_.mutation_cache().RecordPoint({&f.key, 1}, point);
    }
    for (const auto& [m, key] : f.tainted_keys) {
      if (ctx.active.contains(m)) {
        infra_ += memo_.mutation_cache().RecordPoint({&key, 1}, point);
      }
    }
  }
  if (ctx.outer_keys.empty()) return;
  if (ctx.outer_gen != gen_) {
    ctx.outer_recorded.assign(split_done_.size(), false);
    ctx.outer_gen = gen_;
  }
  if (ctx.outer_recorded[point]) return;
  ctx.outer_recorded[point] = true;
  infra_ += memo_.mutation_cache().RecordPoint(ctx.outer_keys, point);
}

std::unique_ptr<Context> Machine::Snapshot(const Context& ctx,
                                           MutantId mainline) {
  ++infra_;
  auto child = std::make_unique<Context>(ctx);
  child->root = false;
  child->mainline = mainline;
  child->active.clear();
  return child;
}

Frame Machine::NewFrame(const Context& ctx, int fn,
                        std::vector<TaintedValue> args, int depth) {
  const CompiledFunction& def = code_.functions[fn];
  Frame f;
  f.fn = fn;
  f.depth = depth;
  f.slots.resize(def.slot_names.size());
  f.bound.assign(def.slot_names.size(), false);
  for (std::size_t i = 0; i < args.size(); ++i) {
    f.slots[i] = args[i];
    f.bound[i] = true;
  }
  f.args = std::move(args);
  f.entry_virtual = ctx.virtual_stmts;
  if (Tainting(ctx)) f.entry_offsets = offsets_;
  f.epoch = epoch_;
  f.max_depth = depth;
  return f;
}

TaintedValue Machine::Binary(Context& ctx, const TaintedValue& a, BinaryOp op,
                             const TaintedValue& b) {
  if (!Tainting(ctx)) return TaintedValue(ApplyBinary(op, a.value(), b.value()));
  TaintedValue v = ApplyBinary(a, op, {}, b, sink_);
  HandleFaults(ctx);
  return v;
}

TaintedValue Machine::Lifted(
    Context& ctx, std::vector<TaintedValue> args,
    const std::function<Value(std::span<const Value>)>& fn) {
  if (!Tainting(ctx)) {
    std::vector<Value> plain;
    plain.reserve(args.size());
    for (const TaintedValue& arg : args) plain.push_back(arg.value());
    return TaintedValue(fn(plain));
  }
  std::vector<const TaintedValue*> ptrs;
  ptrs.reserve(args.size());
  for (const TaintedValue& arg : args) ptrs.push_back(&arg);
  TaintedValue v = Lift(ptrs, fn, sink_);
  HandleFaults(ctx);
  return v;
}

TaintedValue Machine::ExecSite(Context& ctx, const Site& site, TaintedValue a,
                               TaintedValue b) {
  TaintedValue v;
  if (Tainting(ctx)) {
    v = ApplyBinary(a, site.original, site.variants, b, sink_);
    HandleFaults(ctx);
  } else {
    v = TaintedValue(ApplyBinary(site.OpFor(ctx.mainline), a.value(),
                                 b.value()));
  }
  if (memo_enabled_) RecordSite(ctx, site.point);
  return v;
}

TaintedValue Machine::SplitSite(Context& ctx, const Site& site, const Value& a,
                                const Value& b) {
  if (ctx.root && !split_done_[site.point]) {
    split_done_[site.point] = true;
    for (const auto& [m, op] : site.variants) {
      Value v;
      try {
        v = ApplyBinary(op, a, b);
      } catch (const EvalError&) {
        Kill(m, Verdict::kKilledException);
        continue;
      }
      std::unique_ptr<Context> child = Snapshot(ctx, m);
      child->frames.back().stack.emplace_back(std::move(v));
      queue_.push_back(std::move(child));
    }
  }
  return TaintedValue(ApplyBinary(site.OpFor(ctx.mainline), a, b));
}

TaintedValue Machine::ModuloSite(Context& ctx, const Site& site,
                                 const Value& a, const Value& b) {
  struct Result {
    std::optional<Value> value;
    std::optional<EvalError> error;
  };
  std::vector<std::pair<BinaryOp, Result>> by_op;
  by_op.reserve(std::size(kArithmeticOps) + std::size(kComparisonOps));
  auto eval = [&](BinaryOp op) -> const Result& {
    for (const auto& [o, r] : by_op) {
      if (o == op) return r;
    }
    Result r;
    try {
      r.value = ApplyBinary(op, a, b);
    } catch (const EvalError& e) {
      r.error = e;
    }
    by_op.emplace_back(op, std::move(r));
    return by_op.back().second;
  };

  bool mainline_here = false;
  for (const auto& [m, op] : site.variants) {
    if (m == ctx.mainline) mainline_here = true;
  }
  Result main = eval(site.OpFor(ctx.mainline));
  if (main.error && ctx.mainline == MutantId::kOriginal) throw *main.error;

  std::vector<MutantId> candidates;
  if (mainline_here || main.error) {
    candidates = ctx.active.ids();
  } else {
    for (const auto& [m, op] : site.variants) {
      if (ctx.active.contains(m)) candidates.push_back(m);
    }
  }

  struct Group {
    Value value;
    std::vector<MutantId> members;
  };
  std::vector<Group> groups;
  for (MutantId m : candidates) {
    const Result& r = eval(site.OpFor(m));
    if (r.error) {
      Kill(m, Verdict::kKilledException, &ctx);
      continue;
    }
    if (main.value && *r.value == *main.value) continue;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.value == *r.value; });
    if (it == groups.end()) {
      groups.push_back({*r.value, {m}});
    } else {
      it->members.push_back(m);
    }
  }

  std::optional<Group> stay;
  if (main.error) {
    Kill(ctx.mainline, Verdict::kKilledException);
    if (groups.empty()) throw DeadSignal{};
    auto lowest = std::min_element(
        groups.begin(), groups.end(), [](const Group& x, const Group& y) {
          return x.members.front() < y.members.front();
        });
    stay = std::move(*lowest);
    groups.erase(lowest);
  }

  for (Group& g : groups) {
    for (MutantId m : g.members) ctx.active.erase(m);
  }
  if (stay) {
    ctx.mainline = stay->members.front();
    ctx.active.erase(ctx.mainline);
  }
  for (Group& g : groups) {
    std::unique_ptr<Context> child = Snapshot(ctx, g.members.front());
    for (std::size_t i = 1; i < g.members.size(); ++i) {
      child->active.insert(g.members[i]);
    }
    child->frames.back().stack.emplace_back(std::move(g.value));
    queue_.push_back(std::move(child));
  }
  return TaintedValue(stay ? stay->value : *main.value);
}

void Machine::RequireBoolTop(Context& ctx) {
  const TaintedValue& top = ctx.frames.back().stack.back();
  if (Tainting(ctx) && top.tainted()) {
    PartitionCondition(top, sink_);
    HandleFaults(ctx);
  } else {
    RequireBool(top.value());
  }
}

void Machine::Branch(Context& ctx, const Instr& in, int pc) {
  Frame& f = ctx.frames.back();
  TaintedValue c = f.Pop();
  bool decision;
  if (Tainting(ctx) && c.tainted()) {
    ConditionSplit split = PartitionCondition(c, sink_);
    HandleFaults(ctx);
    decision = split.mainline;
    for (MutantId m : split.diverge) Diverge(ctx, m, in, pc, !decision);
  } else {
    decision = RequireBool(c.value());
  }
  BranchTarget target = TargetFor(in, pc, decision);
  Frame& top = ctx.frames.back();
  if (target.keep_value) top.stack.emplace_back(Value::Bool(decision));
  top.pc = target.pc;
}

void Machine::Diverge(Context& ctx, MutantId m, const Instr& in, int pc,
                      bool decision) {
  ctx.active.erase(m);
  RecomputeMaxOffset(ctx);
  ++unmerged_;
  std::size_t index = ctx.frames.size() - 1;
  Frame& f = ctx.frames[index];
  if (!options_.fork) {
    f.wounded.insert(m);
    return;
  }
  ++infra_;
  auto child = std::make_unique<Context>();
  child->mainline = m;
  child->base_depth = f.depth;
  child->virtual_stmts = ctx.virtual_stmts + OffsetIn(offsets_, m);
  Frame cf;
  cf.fn = f.fn;
  cf.depth = f.depth;
  cf.max_depth = f.depth;
  cf.epoch = epoch_;
  cf.store = false;
  cf.bound = f.bound;
  cf.slots.reserve(f.slots.size());
  for (const TaintedValue& v : f.slots) cf.slots.push_back(v.Concretize(m));
  cf.stack.reserve(f.stack.size() + 1);
  for (const TaintedValue& v : f.stack) cf.stack.push_back(v.Concretize(m));
  BranchTarget target = TargetFor(in, pc, decision);
  if (target.keep_value) cf.stack.emplace_back(Value::Bool(decision));
  cf.pc = target.pc;
  if (memo_enabled_) {
    for (std::size_t i = 0; i <= index; ++i) {
      child->outer_keys.push_back(KeyFor(ctx.frames[i], m));
    }
  }
  child->frames.push_back(std::move(cf));
  if (pending_.size() <= index) pending_.resize(index + 1);
  pending_[index].push_back({m, std::move(child)});
}

void Machine::Assert(Context& ctx, const TaintedValue& cond, Location loc) {
  bool ok = RequireBool(cond.value());
  if (Tainting(ctx)) {
    bool killed = false;
    for (const auto& [m, v] : cond.taints()) {
      if (!ctx.active.contains(m)) continue;
      if (!v.is_bool()) {
        Kill(m, Verdict::kKilledException, &ctx);
        killed = true;
      } else if (!v.as_bool()) {
        Kill(m, Verdict::kKilledAssertion, &ctx);
        killed = true;
      }
    }
    if (killed) RecomputeMaxOffset(ctx);
  }
  if (!ok) throw AssertionSignal{loc};
}

void Machine::Call(Context& ctx, int fn, int argc) {
  const CompiledFunction& def = code_.functions[fn];
  Frame& caller = ctx.frames.back();
  std::vector<TaintedValue> args(
      std::make_move_iterator(caller.stack.end() - argc),
      std::make_move_iterator(caller.stack.end()));
  caller.stack.resize(caller.stack.size() - argc);
  if (argc != def.arity) {
    throw EvalError(ErrorKind::kArity,
                    def.name + "() takes " + std::to_string(def.arity) +
                        " argument(s), got " + std::to_string(argc));
  }
  int depth = ctx.base_depth + static_cast<int>(ctx.frames.size());
  if (depth >= kMaxCallDepth) {
    throw EvalError(ErrorKind::kRecursion, "maximum call depth exceeded");
  }

  int key = kNoKey;
  std::vector<std::pair<MutantId, int>> tainted_keys;
  if (memo_enabled_) {
    key = InternKey(fn, args, ctx.mainline);
    if (Tainting(ctx)) {
      std::vector<const TaintedValue*> ptrs;
      for (const TaintedValue& arg : args) ptrs.push_back(&arg);
      for (MutantId m : LiveTaints(ptrs, sink_)) {
        int km = InternKey(fn, args, m);
        if (km != key) tainted_keys.emplace_back(m, km);
      }
    }
    if (tainted_keys.empty()) {
      ++infra_;
      const MemoEntry* hit = memo_.Lookup(key, ctx.mainline, ctx.active,
                                          kMaxCallDepth - 1 - depth);
      if (hit != nullptr) {
        Value value = hit->value;
        ctx.virtual_stmts += hit->cost;
        caller.max_depth = std::max(caller.max_depth, depth + hit->height);
        std::vector<int> points(memo_.mutation_cache().PointsAt(key).begin(),
                                memo_.mutation_cache().PointsAt(key).end());
        for (int p : points) RecordSite(ctx, p);
        if (options_.auditor) {
          options_.auditor(def.name, memo_.keys().key(key).args, value);
        }
        ctx.frames.back().stack.emplace_back(std::move(value));
        if (ctx.virtual_stmts > options_.budget) throw TimeoutSignal{};
        if (Tainting(ctx) && max_offset_ > 0) CheckRiderTimeouts(ctx);
        return;
      }
    }
  }

  Frame f = NewFrame(ctx, fn, std::move(args), depth);
  f.key = key;
  f.tainted_keys = std::move(tainted_keys);
  ctx.frames.push_back(std::move(f));
}

void Machine::Merge(Context& ctx, MutantId m, Finish fin, Context& sub,
                    TaintedValue& r) {
  --unmerged_;
  if (fin.dead) return;
  if (fin.kind != OutcomeKind::kPass) {
    Kill(m, VerdictFor(fin.kind));
    r.Erase(m);
    return;
  }
  ++infra_;
  r.Set(m, fin.value.value());
  Reactivate(ctx, m, sub.virtual_stmts - ctx.virtual_stmts);
}

bool Machine::Return(Context& ctx, TaintedValue r, TaintedValue& done) {
  std::size_t index = ctx.frames.size() - 1;
  if (Tainting(ctx)) {
    Frame& f = ctx.frames[index];
    if (index < pending_.size() && !pending_[index].empty()) {
      std::vector<PendingChild> children = std::move(pending_[index]);
      pending_[index].clear();
      std::sort(children.begin(), children.end(),
                [](const PendingChild& x, const PendingChild& y) {
                  return x.mutant < y.mutant;
                });
      for (PendingChild& child : children) {
        Finish fin = Execute(*child.context);
        Merge(ctx, child.mutant, std::move(fin), *child.context, r);
      }
    }
    if (!f.wounded.empty()) {
      for (MutantId m : f.wounded.ids()) {
        Context rerun;
        rerun.mainline = m;
        rerun.base_depth = f.depth;
        rerun.virtual_stmts =
            f.entry_virtual + OffsetIn(f.entry_offsets, m);
        std::vector<TaintedValue> args;
        for (const TaintedValue& arg : f.args) args.push_back(arg.Concretize(m));
        Frame rf = NewFrame(rerun, f.fn, std::move(args), f.depth);
        rf.store = false;
        if (memo_enabled_) {
          for (std::size_t i = 0; i <= index; ++i) {
            rerun.outer_keys.push_back(KeyFor(ctx.frames[i], m));
          }
        }
        rerun.frames.push_back(std::move(rf));
        Finish fin = Execute(rerun);
        Merge(ctx, m, std::move(fin), rerun, r);
      }
      f.wounded.clear();
    }
    if ((index < pending_.size() && !pending_[index].empty()) ||
        !f.wounded.empty()) {
      ++merge_violations_;
    }
  }

  Frame& f = ctx.frames[index];
  if (memo_enabled_ && f.store && f.key != kNoKey && unmerged_ > 0) {
    int height = f.max_depth - f.depth;
    std::vector<ReturnEntry> entries;
    bool same_epoch = f.epoch == epoch_;
    if (ctx.mainline == MutantId::kOriginal || same_epoch) {
      entries.push_back({ctx.mainline, f.key,
                         {r.value(), ctx.virtual_stmts - f.entry_virtual,
                          height}});
    }
    if (Tainting(ctx) && same_epoch) {
      for (const auto& [m, key] : f.tainted_keys) {
        if (!ctx.active.contains(m)) continue;
        std::int64_t cost = ctx.virtual_stmts + OffsetIn(offsets_, m) -
                            f.entry_virtual - OffsetIn(f.entry_offsets, m);
        entries.push_back({m, key, {r.Get(m), cost, height}});
      }
    }
    infra_ += static_cast<std::int64_t>(entries.size());
    memo_.StoreOnReturn(entries);
  }
  if (memo_enabled_ && Tainting(ctx) && unmerged_ == 0) {
    std::int64_t clears = memo_.stats().clears;
    memo_.ClearIfAllMerged(0);
    if (memo_.stats().clears != clears) {
      ++epoch_;
      ++gen_;
    }
  }

  int max_depth = f.max_depth;
  ctx.frames.pop_back();
  if (ctx.frames.empty()) {
    done = std::move(r);
    return true;
  }
  Frame& caller = ctx.frames.back();
  caller.max_depth = std::max(caller.max_depth, max_depth);
  caller.stack.push_back(std::move(r));
  return false;
}

bool Machine::Step(Context& ctx, TaintedValue& done) {
  Frame& f = ctx.frames.back();
  int pc = f.pc++;
  const Instr& in = code_.functions[f.fn].code[pc];
  switch (in.op) {
    case OpCode::kStmt:
      Tick(ctx);
      break;
    case OpCode::kConst:
      f.stack.emplace_back(code_.consts[in.a]);
      break;
    case OpCode::kLoad:
      if (!f.bound[in.a]) {
        throw EvalError(ErrorKind::kName,
                        "name '" + code_.functions[f.fn].slot_names[in.a] +
                            "' is not defined");
      }
      f.stack.push_back(f.slots[in.a]);
      break;
    case OpCode::kStore:
      f.slots[in.a] = f.Pop();
      f.bound[in.a] = true;
      break;
    case OpCode::kBinary: {
      TaintedValue b = f.Pop();
      TaintedValue a = f.Pop();
      TaintedValue v = Binary(ctx, a, static_cast<BinaryOp>(in.a), b);
      ctx.frames.back().stack.push_back(std::move(v));
      break;
    }
    case OpCode::kSite: {
      const Site& site = code_.sites[in.a];
      TaintedValue b = f.Pop();
      TaintedValue a = f.Pop();
      TaintedValue v;
      switch (options_.mode) {
        case EngineMode::kExecTaints:
          v = ExecSite(ctx, site, std::move(a), std::move(b));
          break;
        case EngineMode::kSplitStream:
          v = SplitSite(ctx, site, a.value(), b.value());
          break;
        case EngineMode::kModuloState:
          v = ModuloSite(ctx, site, a.value(), b.value());
          break;
      }
      ctx.frames.back().stack.push_back(std::move(v));
      break;
    }
    case OpCode::kUnary: {
      TaintedValue a = f.Pop();
      TaintedValue v;
      if (Tainting(ctx)) {
        v = ApplyUnary(static_cast<UnaryOp>(in.a), a, sink_);
        HandleFaults(ctx);
      } else {
        v = TaintedValue(ApplyUnary(static_cast<UnaryOp>(in.a), a.value()));
      }
      ctx.frames.back().stack.push_back(std::move(v));
      break;
    }
    case OpCode::kToBool:
      RequireBoolTop(ctx);
      break;
    case OpCode::kCall:
      Call(ctx, in.a, in.b);
      break;
    case OpCode::kBuiltin:
    case OpCode::kList:
    case OpCode::kIndex: {
      int argc = in.op == OpCode::kIndex ? 2 : in.b;
      std::vector<TaintedValue> args(
          std::make_move_iterator(f.stack.end() - argc),
          std::make_move_iterator(f.stack.end()));
      f.stack.resize(f.stack.size() - argc);
      std::function<Value(std::span<const Value>)> fn;
      if (in.op == OpCode::kBuiltin) {
        Builtin builtin = static_cast<Builtin>(in.a);
        fn = [builtin](std::span<const Value> vs) {
          return CallBuiltin(builtin, vs);
        };
      } else if (in.op == OpCode::kList) {
        fn = [](std::span<const Value> vs) {
          return Value::List(std::vector<Value>(vs.begin(), vs.end()));
        };
      } else {
        fn = [](std::span<const Value> vs) { return ApplyIndex(vs[0], vs[1]); };
      }
      TaintedValue v = Lifted(ctx, std::move(args), fn);
      ctx.frames.back().stack.push_back(std::move(v));
      break;
    }
    case OpCode::kCallUnknown:
      throw EvalError(ErrorKind::kName,
                      "function '" + code_.names[in.a] + "' is not defined");
    case OpCode::kJumpIfFalse:
    case OpCode::kJumpIfFalseKeep:
    case OpCode::kJumpIfTrueKeep:
      Branch(ctx, in, pc);
      break;
    case OpCode::kJump:
      f.pc = in.a;
      break;
    case OpCode::kReturn:
      return Return(ctx, f.Pop(), done);
    case OpCode::kReturnNone:
      return Return(ctx, TaintedValue(Value::None()), done);
    case OpCode::kAssert: {
      TaintedValue c = f.Pop();
      Assert(ctx, c, in.loc);
      break;
    }
    case OpCode::kPop:
      f.stack.pop_back();
      break;
  }
  return false;
}

Finish Machine::Execute(Context& ctx) {
  ++executions_;
  Finish fin;
  Location loc;
  try {
    TaintedValue done;
    while (true) {
      const Frame& f = ctx.frames.back();
      loc = code_.functions[f.fn].code[f.pc].loc;
      if (Step(ctx, done)) break;
    }
    fin.value = std::move(done);
    fin.outcome.value = fin.value.value();
  } catch (const TimeoutSignal&) {
    fin.kind = OutcomeKind::kTimeout;
  } catch (const AssertionSignal& signal) {
    fin.kind = OutcomeKind::kAssertionFailure;
    fin.outcome.loc = signal.loc;
  } catch (const DeadSignal&) {
    fin.dead = true;
  } catch (const EvalError& e) {
    fin.kind = OutcomeKind::kRuntimeException;
    fin.outcome.loc = e.location().line == 0 ? loc : e.location();
    fin.outcome.error = e.kind();
    fin.outcome.message = e.what();
  }
  fin.outcome.kind = fin.kind;
  return fin;
}

TestRun Machine::Run(std::string_view test) {
  TestRun run;
  int fn = code_.Find(test);
  if (fn < 0) {
    run.valid = false;
    run.original.kind = OutcomeKind::kRuntimeException;
    run.original.error = ErrorKind::kName;
    run.original.message = "function '" + std::string(test) + "' is not defined";
    return run;
  }

  Context root;
  root.root = true;
  if (options_.mode != EngineMode::kSplitStream) {
    for (const MutantInfo& info : meta_.mutants) root.active.insert(info.id);
  }
  sink_.set_live(&root.active);
  if (code_.functions[fn].arity != 0) {
    run.valid = false;
    run.original.kind = OutcomeKind::kRuntimeException;
    run.original.error = ErrorKind::kArity;
    run.original.message = std::string(test) + "() takes parameters";
    return run;
  }
  root.frames.push_back(NewFrame(root, fn, {}, 0));
  if (memo_enabled_) root.frames.back().key = InternKey(fn, {}, root.mainline);

  Finish fin = Execute(root);
  if (fin.kind != OutcomeKind::kPass) {
    run.valid = false;
    run.original = fin.outcome;
  }

  if (run.valid) {
    if (options_.mode == EngineMode::kModuloState) {
      auto settle = [&](const Context& ctx, const Finish& f) {
        if (f.dead) return;
        Verdict v = VerdictFor(f.kind);
        if (ctx.mainline != MutantId::kOriginal) Kill(ctx.mainline, v);
        ctx.active.ForEach([&](MutantId m) { Kill(m, v); });
      };
      settle(root, fin);
    }
    while (!queue_.empty()) {
      std::unique_ptr<Context> ctx = std::move(queue_.front());
      queue_.pop_front();
      Finish f = Execute(*ctx);
      if (f.dead) continue;
      Verdict v = VerdictFor(f.kind);
      Kill(ctx->mainline, v);
      ctx->active.ForEach([&](MutantId m) { Kill(m, v); });
    }
    if (options_.mode == EngineMode::kExecTaints) {
      root.active.ForEach([&](MutantId m) { Kill(m, Verdict::kSurvived); });
    }
  }

  run.verdicts.resize(meta_.mutant_count(), Verdict::kSurvived);
  for (const MutantInfo& info : meta_.mutants) {
    std::optional<Verdict>& slot = verdicts_[Index(info.id) - 1];
    bool covered = options_.covered == nullptr ||
                   options_.covered->contains(info.point);
    Verdict v;
    if (!covered) {
      v = Verdict::kNotCovered;
    } else if (slot) {
      v = *slot;
    } else {
      // Only reachable when the original fails or a merge was lost.
      if (run.valid && options_.mode == EngineMode::kExecTaints) {
        ++merge_violations_;
      }
      v = Verdict::kSurvived;
    }
    run.verdicts[Index(info.id) - 1] = v;
  }
  run.program_stmts = stmts_;
  run.infra_ops = infra_ + sink_.infra_ops();
  run.executions = executions_;
  run.memo = memo_.stats();
  run.merge_violations = merge_violations_;
  return run;
}

}  // namespace

TestRun RunTest(const MetaProgram& meta, const CompiledProgram& code,
                std::string_view test, const EngineOptions& options) {
  Machine machine(meta, code, options);
  return machine.Run(test);
}

}  // namespace mutlab
