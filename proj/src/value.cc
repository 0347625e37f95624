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

#include "mutlab/value.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <functional>

namespace mutlab {

std::string ToString(Location loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

Value Value::List(std::vector<Value> elements) {
  return Value(Rep(std::make_shared<const std::vector<Value>>(
      std::move(elements))));
}

std::span<const Value> Value::as_list() const {
  const ListPtr& list = std::get<ListPtr>(rep_);
  return {list->data(), list->size()};
}

double Value::as_number() const {
  return is_int() ? static_cast<double>(as_int()) : as_float();
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.kind()) {
    case Value::Kind::kNone:
      return true;
    case Value::Kind::kInt:
      return a.as_int() == b.as_int();
    case Value::Kind::kFloat:
      return std::bit_cast<std::uint64_t>(a.as_float()) ==
             std::bit_cast<std::uint64_t>(b.as_float());
    case Value::Kind::kBool:
      return a.as_bool() == b.as_bool();
    case Value::Kind::kStr:
      return a.as_str() == b.as_str();
    case Value::Kind::kList: {
      auto lhs = a.as_list();
      auto rhs = b.as_list();
      if (lhs.data() == rhs.data() && lhs.size() == rhs.size()) return true;
      if (lhs.size() != rhs.size()) return false;
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (!(lhs[i] == rhs[i])) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

std::size_t Mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t Value::Hash() const {
  std::size_t h = rep_.index();
  switch (kind()) {
    case Kind::kNone:
      return h;
    case Kind::kInt:
      return Mix(h, std::hash<std::int64_t>()(as_int()));
    case Kind::kFloat:
      return Mix(h, std::hash<std::uint64_t>()(
                        std::bit_cast<std::uint64_t>(as_float())));
    case Kind::kBool:
      return Mix(h, as_bool() ? 1 : 2);
    case Kind::kStr:
      return Mix(h, std::hash<std::string>()(as_str()));
    case Kind::kList:
      for (const Value& v : as_list()) h = Mix(h, v.Hash());
      return h;
  }
  return h;
}

std::string FormatFloat(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

namespace {

void AppendQuoted(std::string& out, const std::string& s) {
  out += '\'';
  for (char c : s) {
    switch (c) {
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\'':
        out += "\\'";
        break;
      default:
        out += c;
    }
  }
  out += '\'';
}

}  // namespace

std::string Value::ToString() const {
  switch (kind()) {
    case Kind::kNone:
      return "None";
    case Kind::kInt:
      return std::to_string(as_int());
    case Kind::kFloat:
      return FormatFloat(as_float());
    case Kind::kBool:
      return as_bool() ? "True" : "False";
    case Kind::kStr: {
      std::string out;
      AppendQuoted(out, as_str());
      return out;
    }
    case Kind::kList: {
      std::string out = "[";
      bool first = true;
      for (const Value& v : as_list()) {
        if (!first) out += ", ";
        first = false;
        out += v.ToString();
      }
      return out + "]";
    }
  }
  return "?";
}

const char* KindName(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kNone:
      return "None";
    case Value::Kind::kInt:
      return "int";
    case Value::Kind::kFloat:
      return "float";
    case Value::Kind::kBool:
      return "bool";
    case Value::Kind::kStr:
      return "str";
    case Value::Kind::kList:
      return "list";
  }
  return "?";
}

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDivisionByZero:
      return "div-by-zero";
    case ErrorKind::kType:
      return "type";
    case ErrorKind::kOverflow:
      return "overflow";
    case ErrorKind::kIndex:
      return "index";
    case ErrorKind::kArity:
      return "arity";
    case ErrorKind::kName:
      return "name";
    case ErrorKind::kValue:
      return "value";
    case ErrorKind::kRecursion:
      return "recursion";
  }
  return "?";
}

}  // namespace mutlab
