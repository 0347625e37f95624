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

#include "mutlab/taint.h"

#include <algorithm>

namespace mutlab {

MutantSet::MutantSet(std::initializer_list<MutantId> ids) {
  for (MutantId m : ids) insert(m);
}

void MutantSet::insert(MutantId m) {
  std::size_t i = static_cast<std::size_t>(Index(m));
  if (i >= bits_.size()) bits_.resize(i + 1, false);
  if (!bits_[i]) {
    bits_[i] = true;
    ++size_;
  }
}

void MutantSet::erase(MutantId m) {
  std::size_t i = static_cast<std::size_t>(Index(m));
  if (i < bits_.size() && bits_[i]) {
    bits_[i] = false;
    --size_;
  }
}

void MutantSet::clear() {
  bits_.clear();
  size_ = 0;
}

std::vector<MutantId> MutantSet::ids() const {
  std::vector<MutantId> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(Mutant(static_cast<int>(i)));
  }
  return out;
}

TaintedValue::TaintedValue(std::initializer_list<Entry> entries) {
  bool first = true;
  for (const auto& [m, v] : entries) {
    if (first) {
      value_ = v;
      first = false;
    } else {
      Set(m, v);
    }
  }
}

namespace {

auto FindEntry(std::vector<TaintedValue::Entry>& taints, MutantId m) {
  return std::lower_bound(
      taints.begin(), taints.end(), m,
      [](const TaintedValue::Entry& e, MutantId id) { return e.first < id; });
}

}  // namespace

const Value& TaintedValue::Get(MutantId m) const {
  if (m == MutantId::kOriginal) return value_;
  for (const Entry& e : taints_) {
    if (e.first == m) return e.second;
    if (e.first > m) break;
  }
  return value_;
}

bool TaintedValue::Has(MutantId m) const {
  return m == MutantId::kOriginal ||
         std::any_of(taints_.begin(), taints_.end(),
                     [m](const Entry& e) { return e.first == m; });
}

void TaintedValue::Set(MutantId m, Value v) {
  if (m == MutantId::kOriginal) {
    value_ = std::move(v);
    return;
  }
  auto it = FindEntry(taints_, m);
  bool present = it != taints_.end() && it->first == m;
  if (v == value_) {
    if (present) taints_.erase(it);
  } else if (present) {
    it->second = std::move(v);
  } else {
    taints_.insert(it, {m, std::move(v)});
  }
}

void TaintedValue::Erase(MutantId m) {
  auto it = FindEntry(taints_, m);
  if (it != taints_.end() && it->first == m) taints_.erase(it);
}

void TaintedValue::Restrict(const MutantSet& keep) {
  std::erase_if(taints_, [&](const Entry& e) { return !keep.contains(e.first); });
}

std::string TaintedValue::ToString() const {
  std::string out = "{M0:" + value_.ToString();
  for (const auto& [m, v] : taints_) {
    out += ", " + mutlab::ToString(m) + ":" + v.ToString();
  }
  return out + "}";
}

void TaintSink::AddFault(MutantId m, const EvalError& error) {
  faults_.push_back({m, error.kind(), error.what()});
}

std::vector<MutantId> LiveTaints(std::span<const TaintedValue* const> values,
                                 const TaintSink& sink) {
  std::vector<MutantId> out;
  for (const TaintedValue* v : values) {
    for (const auto& entry : v->taints()) {
      if (sink.live(entry.first)) out.push_back(entry.first);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MutantSet ActiveTaints(std::span<const TaintedValue> values) {
  MutantSet out;
  for (const TaintedValue& v : values) {
    for (const auto& entry : v.taints()) out.insert(entry.first);
  }
  return out;
}

TaintedValue ApplyBinary(
    const TaintedValue& a, BinaryOp op,
    std::span<const std::pair<MutantId, BinaryOp>> variants,
    const TaintedValue& b, TaintSink& sink) {
  TaintedValue out(ApplyBinary(op, a.value(), b.value()));
  if (!a.tainted() && !b.tainted() && variants.empty()) return out;
  const TaintedValue* operands[] = {&a, &b};
  std::vector<MutantId> keys = LiveTaints(operands, sink);
  for (const auto& [m, variant_op] : variants) {
    if (sink.live(m)) keys.push_back(m);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (MutantId m : keys) {
    BinaryOp mutant_op = op;
    for (const auto& [vm, vop] : variants) {
      if (vm == m) mutant_op = vop;
    }
    try {
      out.Set(m, ApplyBinary(mutant_op, a.Get(m), b.Get(m)));
      sink.CountOps(1);
    } catch (const EvalError& e) {
      sink.AddFault(m, e);
    }
  }
  return out;
}

TaintedValue ApplyUnary(UnaryOp op, const TaintedValue& a, TaintSink& sink) {
  TaintedValue out(ApplyUnary(op, a.value()));
  for (const auto& [m, v] : a.taints()) {
    if (!sink.live(m)) continue;
    try {
      out.Set(m, ApplyUnary(op, v));
      sink.CountOps(1);
    } catch (const EvalError& e) {
      sink.AddFault(m, e);
    }
  }
  return out;
}

TaintedValue Lift(std::span<const TaintedValue* const> args,
                  const std::function<Value(std::span<const Value>)>& fn,
                  TaintSink& sink) {
  std::vector<Value> plain;
  plain.reserve(args.size());
  for (const TaintedValue* arg : args) plain.push_back(arg->value());
  TaintedValue out(fn(plain));
  for (MutantId m : LiveTaints(args, sink)) {
    for (std::size_t i = 0; i < args.size(); ++i) plain[i] = args[i]->Get(m);
    try {
      out.Set(m, fn(plain));
      sink.CountOps(1);
    } catch (const EvalError& e) {
      sink.AddFault(m, e);
    }
  }
  return out;
}

ConditionSplit PartitionCondition(const TaintedValue& c, TaintSink& sink) {
  ConditionSplit split;
  split.mainline = RequireBool(c.value());
  for (const auto& [m, v] : c.taints()) {
    if (!sink.live(m)) continue;
    try {
      bool decision = RequireBool(v);
      (decision == split.mainline ? split.follow : split.diverge).push_back(m);
    } catch (const EvalError& e) {
      sink.AddFault(m, e);
    }
  }
  return split;
}

}  // namespace mutlab
