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

// Random program generator for differential testing of the strategies.

#ifndef MUTLAB_FUZZ_H_
#define MUTLAB_FUZZ_H_

#include <cstdint>
#include <string>

namespace mutlab {

// A deterministic program for `seed`: at most three functions, at most two
// loops with literal bounds, integer and float arithmetic, comparisons, and
// one test `test_main` asserting the value the original computes. The
// original always passes.
std::string FuzzProgram(std::uint64_t seed);

}  // namespace mutlab

#endif  // MUTLAB_FUZZ_H_
