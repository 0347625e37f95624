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

// Values annotated with execution taints, and their transmission through
// operators.

#ifndef MUTLAB_TAINT_H_
#define MUTLAB_TAINT_H_

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mutlab/mutant_id.h"
#include "mutlab/ops.h"
#include "mutlab/value.h"

namespace mutlab {

// Dense set of mutant ids.
class MutantSet {
 public:
  MutantSet() = default;
  MutantSet(std::initializer_list<MutantId> ids);

  bool contains(MutantId m) const {
    std::size_t i = static_cast<std::size_t>(Index(m));
    return i < bits_.size() && bits_[i];
  }
  void insert(MutantId m);
  void erase(MutantId m);
  void clear();
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Members in increasing id order.
  std::vector<MutantId> ids() const;

  template <typename F>
  void ForEach(F f) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i]) f(Mutant(static_cast<int>(i)));
    }
  }

  friend bool operator==(const MutantSet& a, const MutantSet& b) {
    return a.ids() == b.ids();
  }

 private:
  std::vector<bool> bits_;
  int size_ = 0;
};

// A value with its taint map. The M0 entry is stored apart; the other
// entries are kept sorted by id and never equal the M0 entry.
class TaintedValue {
 public:
  using Entry = std::pair<MutantId, Value>;

  TaintedValue() = default;
  explicit TaintedValue(Value v) : value_(std::move(v)) {}
  // The first entry must be M0.
  TaintedValue(std::initializer_list<Entry> entries);

  const Value& value() const { return value_; }

  // The entry for `m`, falling back to M0.
  const Value& Get(MutantId m) const;
  bool Has(MutantId m) const;

  bool tainted() const { return !taints_.empty(); }
  std::span<const Entry> taints() const { return taints_; }

  // Sets the entry for `m`; an entry equal to M0 is pruned. Setting M0
  // keeps the other entries, which the caller must keep consistent.
  void Set(MutantId m, Value v);
  void Erase(MutantId m);

  // Entries for non-members of `keep` are dropped.
  void Restrict(const MutantSet& keep);

  // The value seen by `m` with no remaining taints.
  TaintedValue Concretize(MutantId m) const { return TaintedValue(Get(m)); }

  // `{M0:v0, Mi:vi, ...}`.
  std::string ToString() const;

  friend bool operator==(const TaintedValue& a, const TaintedValue& b) {
    return a.value_ == b.value_ && a.taints_ == b.taints_;
  }

 private:
  Value value_;
  std::vector<Entry> taints_;
};

// A per-mutant evaluation failure.
struct Fault {
  MutantId mutant;
  ErrorKind kind;
  std::string message;
};

// The context a taint operation runs in: which mutants are tracked, where
// per-mutant failures go, and the infrastructure operation counter.
class TaintSink {
 public:
  // A null `live` set tracks every mutant.
  explicit TaintSink(const MutantSet* live = nullptr) : live_(live) {}

  bool live(MutantId m) const { return live_ == nullptr || live_->contains(m); }
  void set_live(const MutantSet* live) { live_ = live; }

  void AddFault(MutantId m, const EvalError& error);
  const std::vector<Fault>& faults() const { return faults_; }
  std::vector<Fault> TakeFaults() { return std::exchange(faults_, {}); }

  void CountOps(std::int64_t n) { infra_ops_ += n; }
  std::int64_t infra_ops() const { return infra_ops_; }

 private:
  const MutantSet* live_;
  std::vector<Fault> faults_;
  std::int64_t infra_ops_ = 0;
};

// Live mutants with an entry in any of `values`, in id order.
std::vector<MutantId> LiveTaints(std::span<const TaintedValue* const> values,
                                 const TaintSink& sink);

// Union of the non-M0 keys of `values`.
MutantSet ActiveTaints(std::span<const TaintedValue> values);

// Computes `op` on the M0 entries and, for every live mutant tainting an
// operand or listed in `variants`, that mutant's operator on its own
// entries. An M0 failure throws; a mutant failure becomes a fault and the
// mutant gets no entry.
TaintedValue ApplyBinary(const TaintedValue& a, BinaryOp op,
                         std::span<const std::pair<MutantId, BinaryOp>> variants,
                         const TaintedValue& b, TaintSink& sink);

TaintedValue ApplyUnary(UnaryOp op, const TaintedValue& a, TaintSink& sink);

// Pointwise extension of `fn` to tainted arguments.
TaintedValue Lift(std::span<const TaintedValue* const> args,
                  const std::function<Value(std::span<const Value>)>& fn,
                  TaintSink& sink);

struct ConditionSplit {
  bool mainline = false;
  std::vector<MutantId> follow;   // tainted, same decision
  std::vector<MutantId> diverge;  // tainted, other decision
};

// Splits the live tainted mutants of a Bool-valued condition by decision.
// A non-Bool M0 entry throws; a non-Bool mutant entry becomes a fault.
ConditionSplit PartitionCondition(const TaintedValue& c, TaintSink& sink);

}  // namespace mutlab

#endif  // MUTLAB_TAINT_H_
