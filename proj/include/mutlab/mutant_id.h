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

#ifndef MUTLAB_MUTANT_ID_H_
#define MUTLAB_MUTANT_ID_H_

#include <cstdint>
#include <string>

namespace mutlab {

// Identifies a mutant. M0 is the original program; M1..Mn are the
// enumerated first-order mutants.
enum class MutantId : std::int32_t { kOriginal = 0 };

constexpr MutantId Mutant(int id) { return static_cast<MutantId>(id); }
constexpr int Index(MutantId m) { return static_cast<int>(m); }

inline std::string ToString(MutantId m) {
  return "M" + std::to_string(Index(m));
}

}  // namespace mutlab

#endif  // MUTLAB_MUTANT_ID_H_
