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

// Memoization of user-function calls across mutants. A call result is
// reusable by a mutant unless that mutant's mutation was executed inside
// the call, which the mutation cache records.

#ifndef MUTLAB_MEMO_H_
#define MUTLAB_MEMO_H_

#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mutlab/taint.h"
#include "mutlab/value.h"

namespace mutlab {

struct CallKey {
  int fn = 0;
  std::vector<Value> args;

  friend bool operator==(const CallKey&, const CallKey&) = default;
};

struct CallKeyHash {
  std::size_t operator()(const CallKey& key) const;
};

// Assigns dense ids to call keys.
class KeyTable {
 public:
  int Intern(const CallKey& key);
  const CallKey& key(int id) const { return keys_[id]; }
  int size() const { return static_cast<int>(keys_.size()); }
  void Clear();

 private:
  std::unordered_map<CallKey, int, CallKeyHash> ids_;
  std::vector<CallKey> keys_;
};

// Set of (mutant, call) pairs. Recording a mutation point records every
// mutant of that point.
class MutationCache {
 public:
  // point_of[i] is the point of mutant Mi; point_of[0] is unused.
  explicit MutationCache(std::vector<int> point_of = {})
      : point_of_(std::move(point_of)) {}

  // Adds (m, k) for every m in `mutants` and k in `keys`. Returns the
  // number of new pairs.
  int Record(std::span<const int> keys, std::span<const MutantId> mutants);
  int RecordPoint(std::span<const int> keys, int point);
  bool RecordOne(MutantId m, int key);

  bool Contains(MutantId m, int key) const;
  // Points recorded for `key`, in insertion order.
  std::span<const int> PointsAt(int key) const;
  bool empty() const { return mutants_.empty() && points_.empty(); }
  void Clear();

 private:
  static std::uint64_t Pack(int a, int key) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(key);
  }

  std::vector<int> point_of_;
  std::unordered_set<std::uint64_t> mutants_;
  std::unordered_set<std::uint64_t> points_;
  std::unordered_map<int, std::vector<int>> points_at_;
};

struct MemoEntry {
  Value value;
  std::int64_t cost = 0;  // statements the call executes
  int height = 0;         // extra call depth the call reaches
};

struct MemoStats {
  std::int64_t hits = 0;
  std::int64_t misses = 0;
  std::int64_t stores = 0;
  std::int64_t clears = 0;

  friend bool operator==(const MemoStats&, const MemoStats&) = default;
};

// A candidate memo entry from a returning call, for one execution taint.
struct ReturnEntry {
  MutantId mutant;
  int key;
  MemoEntry entry;
};

class Memo {
 public:
  explicit Memo(std::vector<int> point_of = {})
      : mutation_cache_(std::move(point_of)) {}

  KeyTable& keys() { return keys_; }
  MutationCache& mutation_cache() { return mutation_cache_; }
  const MemoStats& stats() const { return stats_; }

  // A hit needs an entry for `key` no taller than `max_height` that neither
  // `mainline` nor any of `riders` has a recorded mutation in.
  const MemoEntry* Lookup(int key, MutantId mainline, const MutantSet& riders,
                          int max_height = std::numeric_limits<int>::max());

  // Stores each candidate whose (mutant, key) is not in the mutation cache.
  // Existing entries are kept. Returns the number stored.
  int StoreOnReturn(std::span<const ReturnEntry> entries);

  // Empties both caches once no mutant is waiting to merge.
  void ClearIfAllMerged(int unmerged);

  std::size_t size() const { return entries_.size(); }

 private:
  KeyTable keys_;
  MutationCache mutation_cache_;
  std::unordered_map<int, MemoEntry> entries_;
  MemoStats stats_;
};

}  // namespace mutlab

#endif  // MUTLAB_MEMO_H_
