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

#include "mutlab/memo.h"

namespace mutlab {

std::size_t CallKeyHash::operator()(const CallKey& key) const {
  std::size_t h = std::hash<int>()(key.fn);
  for (const Value& v : key.args) {
    h ^= v.Hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int KeyTable::Intern(const CallKey& key) {
  auto [it, inserted] = ids_.try_emplace(key, static_cast<int>(keys_.size()));
  if (inserted) keys_.push_back(key);
  return it->second;
}

void KeyTable::Clear() {
  ids_.clear();
  keys_.clear();
}

int MutationCache::Record(std::span<const int> keys,
                          std::span<const MutantId> mutants) {
  int added = 0;
  for (MutantId m : mutants) {
    for (int key : keys) added += RecordOne(m, key) ? 1 : 0;
  }
  return added;
}

int MutationCache::RecordPoint(std::span<const int> keys, int point) {
  int added = 0;
  for (int key : keys) {
    if (points_.insert(Pack(point, key)).second) {
      points_at_[key].push_back(point);
      ++added;
    }
  }
  return added;
}

bool MutationCache::RecordOne(MutantId m, int key) {
  return mutants_.insert(Pack(Index(m), key)).second;
}

bool MutationCache::Contains(MutantId m, int key) const {
  if (m == MutantId::kOriginal) return false;
  if (mutants_.contains(Pack(Index(m), key))) return true;
  std::size_t i = static_cast<std::size_t>(Index(m));
  return i < point_of_.size() && points_.contains(Pack(point_of_[i], key));
}

std::span<const int> MutationCache::PointsAt(int key) const {
  auto it = points_at_.find(key);
  if (it == points_at_.end()) return {};
  return it->second;
}

void MutationCache::Clear() {
  mutants_.clear();
  points_.clear();
  points_at_.clear();
}

const MemoEntry* Memo::Lookup(int key, MutantId mainline,
                              const MutantSet& riders, int max_height) {
  auto it = entries_.find(key);
  bool hit = it != entries_.end() && it->second.height <= max_height &&
             !mutation_cache_.Contains(mainline, key);
  if (hit) {
    riders.ForEach([&](MutantId m) {
      if (hit && mutation_cache_.Contains(m, key)) hit = false;
    });
  }
  if (!hit) {
    ++stats_.misses;
    return nullptr;
  }
  ++stats_.hits;
  return &it->second;
}

int Memo::StoreOnReturn(std::span<const ReturnEntry> entries) {
  int stored = 0;
  for (const ReturnEntry& e : entries) {
    if (mutation_cache_.Contains(e.mutant, e.key)) continue;
    if (entries_.try_emplace(e.key, e.entry).second) {
      ++stored;
      ++stats_.stores;
    }
  }
  return stored;
}

void Memo::ClearIfAllMerged(int unmerged) {
  if (unmerged != 0 || (entries_.empty() && mutation_cache_.empty())) return;
  entries_.clear();
  mutation_cache_.Clear();
  ++stats_.clears;
}

}  // namespace mutlab
