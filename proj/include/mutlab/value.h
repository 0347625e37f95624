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

#ifndef MUTLAB_VALUE_H_
#define MUTLAB_VALUE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mutlab {

struct Location {
  int line = 0;
  int column = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

std::string ToString(Location loc);

class Value;
using ListPtr = std::shared_ptr<const std::vector<Value>>;

struct NoneValue {
  friend bool operator==(NoneValue, NoneValue) { return true; }
};

// An untainted runtime value of the mini-language. Values are immutable;
// lists share their element storage.
class Value {
 public:
  enum class Kind { kNone, kInt, kFloat, kBool, kStr, kList };

  Value() = default;
  static Value Int(std::int64_t v) { return Value(Rep(v)); }
  static Value Float(double v) { return Value(Rep(v)); }
  static Value Bool(bool v) { return Value(Rep(v)); }
  static Value Str(std::string v) { return Value(Rep(std::move(v))); }
  static Value List(std::vector<Value> elements);
  static Value None() { return Value(); }

  Kind kind() const { return static_cast<Kind>(rep_.index()); }
  bool is_int() const { return kind() == Kind::kInt; }
  bool is_float() const { return kind() == Kind::kFloat; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_str() const { return kind() == Kind::kStr; }
  bool is_list() const { return kind() == Kind::kList; }
  bool is_none() const { return kind() == Kind::kNone; }
  bool is_number() const { return is_int() || is_float(); }

  std::int64_t as_int() const { return std::get<std::int64_t>(rep_); }
  double as_float() const { return std::get<double>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  const std::string& as_str() const { return std::get<std::string>(rep_); }
  std::span<const Value> as_list() const;

  // Numeric view of an Int or Float.
  double as_number() const;

  // Deep structural equality. Floats compare bit-exact, and values of
  // different kinds are never equal (1 != 1.0 here).
  friend bool operator==(const Value& a, const Value& b);

  std::size_t Hash() const;

  // Source-like rendering: 1, 1.0, True, 'abc', [1, 2], None.
  std::string ToString() const;

 private:
  using Rep =
      std::variant<NoneValue, std::int64_t, double, bool, std::string, ListPtr>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

const char* KindName(Value::Kind kind);

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.Hash(); }
};

// Renders a double the way the mini-language prints float literals:
// shortest round-trip digits, always with a fractional part or exponent.
std::string FormatFloat(double v);

enum class ErrorKind {
  kDivisionByZero,
  kType,
  kOverflow,
  kIndex,
  kArity,
  kName,
  kValue,
  kRecursion,
};

const char* ErrorKindName(ErrorKind kind);

// A runtime error raised while evaluating mini-language code. For the
// original program this is a test error; for a mutant it is a strong kill.
class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorKind kind, std::string message, Location loc = {})
      : std::runtime_error(std::move(message)), kind_(kind), loc_(loc) {}

  ErrorKind kind() const { return kind_; }
  Location location() const { return loc_; }
  EvalError At(Location loc) const {
    return EvalError(kind_, what(), loc_.line == 0 ? loc : loc_);
  }

 private:
  ErrorKind kind_;
  Location loc_;
};

}  // namespace mutlab

#endif  // MUTLAB_VALUE_H_
