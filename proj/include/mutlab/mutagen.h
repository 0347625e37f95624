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

// Mutation point discovery and meta-mutant construction.

#ifndef MUTLAB_MUTAGEN_H_
#define MUTLAB_MUTAGEN_H_

#include <set>
#include <span>
#include <string>
#include <vector>

#include "mutlab/ast.h"

namespace mutlab {

enum class OpClass { kArithmetic, kComparison };

struct MutationPoint {
  int id = 0;  // pre-order position among binary operators
  Location loc;
  OpClass op_class = OpClass::kArithmetic;
  BinaryOp original = BinaryOp::kAdd;
  std::vector<BinaryOp> replacements;  // catalog order, original excluded
};

struct MutantInfo {
  MutantId id = MutantId::kOriginal;
  int point = 0;
  BinaryOp replacement = BinaryOp::kAdd;
};

// A program with every mutant embedded. Functions are marked wrapped, each
// mutated operator is a TaintChoice and each `if`/`while` condition is a
// TaintedCond.
struct MetaProgram {
  Program program;
  std::vector<MutationPoint> points;
  std::vector<MutantInfo> mutants;  // mutants[i].id == Mutant(i + 1)

  int mutant_count() const { return static_cast<int>(mutants.size()); }
  const MutantInfo& info(MutantId m) const { return mutants[Index(m) - 1]; }
};

// Points are numbered in pre-order: an operator precedes its operands.
// Augmented assignments are not mutation points.
std::vector<MutationPoint> DiscoverMutationPoints(const Program& program);

// Numbers (point, replacement) pairs M1..Mn in point then catalog order.
std::vector<MutantInfo> EnumerateMutants(std::span<const MutationPoint> points);

MetaProgram GenerateMetaMutant(const Program& program,
                               std::span<const MutationPoint> points);

// Discovers, enumerates and embeds in one step.
MetaProgram BuildMetaMutant(const Program& program);

// Drops every TaintChoice variant whose mutant is not in `keep`. Mutant
// numbering and points are unchanged.
MetaProgram RestrictMeta(const MetaProgram& meta,
                         const std::set<MutantId>& keep);

// Keeps only `chosen` and renumbers them M1..Mk in the given order. Points
// left without variants revert to plain operators; the rest are renumbered.
MetaProgram SelectMutants(const MetaProgram& meta,
                          std::span<const MutantId> chosen);

// Removes all meta nodes and wrapper marks.
Program EraseMeta(const Program& meta);

// One line per mutant: `Mi <line>:<col> <orig> -> <repl>`.
std::string FormatMutantList(const MetaProgram& meta);

}  // namespace mutlab

#endif  // MUTLAB_MUTAGEN_H_
