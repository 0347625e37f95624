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

#include "mutlab/parser.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>

namespace mutlab {

BinaryOp TaintChoice::OpFor(MutantId m) const {
  auto it = std::lower_bound(
      variants.begin(), variants.end(), m,
      [](const auto& entry, MutantId id) { return entry.first < id; });
  if (it != variants.end() && it->first == m) return it->second;
  return original;
}

const FunctionDef* Program::Find(std::string_view name) const {
  for (const FunctionDef& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

std::vector<std::string> Program::TestNames() const {
  std::vector<std::string> names;
  for (const FunctionDef& fn : functions) {
    if (fn.is_test()) names.push_back(fn.name);
  }
  return names;
}

namespace {

enum class Tok {
  kName,
  kInt,
  kFloat,
  kString,
  kOp,
  kNewline,
  kIndent,
  kDedent,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  Location loc;
  Value literal;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<int> indents = {0};
    while (pos_ < src_.size()) {
      // Start of a physical line: measure indentation.
      int width = 0;
      while (pos_ < src_.size() && src_[pos_] == ' ') {
        ++width;
        Advance();
      }
      if (pos_ < src_.size() && src_[pos_] == '\t') {
        throw SyntaxError("tabs are not allowed for indentation", Here());
      }
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (c == '\n' || c == '\r' || c == '#') {
        SkipRestOfLine();
        continue;
      }
      Location line_start = Here();
      if (width > indents.back()) {
        indents.push_back(width);
        out_.push_back({Tok::kIndent, "", line_start, {}});
      } else {
        while (width < indents.back()) {
          indents.pop_back();
          out_.push_back({Tok::kDedent, "", line_start, {}});
        }
        if (width != indents.back()) {
          throw SyntaxError("inconsistent dedent", line_start);
        }
      }
      LexLogicalLine();
    }
    while (indents.size() > 1) {
      indents.pop_back();
      out_.push_back({Tok::kDedent, "", Here(), {}});
    }
    out_.push_back({Tok::kEnd, "", Here(), {}});
    return std::move(out_);
  }

 private:
  Location Here() const { return {line_, col_}; }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipRestOfLine() {
    while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
    if (pos_ < src_.size()) Advance();
  }

  void LexLogicalLine() {
    int depth = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        if (depth > 0) {
          Advance();
          continue;
        }
        out_.push_back({Tok::kNewline, "", Here(), {}});
        Advance();
        return;
      }
      if (c == ' ' || c == '\r' || c == '\t') {
        Advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        LexName();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        LexNumber();
      } else if (c == '\'' || c == '"') {
        LexString(c);
      } else {
        LexOp(depth);
      }
    }
    out_.push_back({Tok::kNewline, "", Here(), {}});
  }

  void LexName() {
    Location loc = Here();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      Advance();
    }
    out_.push_back(
        {Tok::kName, std::string(src_.substr(start, pos_ - start)), loc, {}});
  }

  void LexNumber() {
    Location loc = Here();
    std::size_t start = pos_;
    bool is_float = false;
    auto digits = [&] {
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        Advance();
      }
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      is_float = true;
      Advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      is_float = true;
      Advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        Advance();
      }
      if (pos_ >= src_.size() ||
          !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        throw SyntaxError("malformed exponent", loc);
      }
      digits();
    }
    std::string text(src_.substr(start, pos_ - start));
    Token tok{is_float ? Tok::kFloat : Tok::kInt, text, loc, {}};
    if (is_float) {
      tok.literal = Value::Float(std::strtod(text.c_str(), nullptr));
    } else {
      std::int64_t v = 0;
      auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc()) {
        throw SyntaxError("integer literal out of range", loc);
      }
      tok.literal = Value::Int(v);
    }
    out_.push_back(std::move(tok));
  }

  void LexString(char quote) {
    Location loc = Here();
    Advance();
    std::string value;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw SyntaxError("unterminated string literal", loc);
      }
      char c = src_[pos_];
      Advance();
      if (c == quote) break;
      if (c == '\\') {
        if (pos_ >= src_.size()) {
          throw SyntaxError("unterminated string literal", loc);
        }
        char e = src_[pos_];
        Advance();
        switch (e) {
          case 'n':
            value += '\n';
            break;
          case 't':
            value += '\t';
            break;
          case '\\':
          case '\'':
          case '"':
            value += e;
            break;
          default:
            throw SyntaxError(std::string("unknown escape \\") + e, loc);
        }
        continue;
      }
      value += c;
    }
    out_.push_back({Tok::kString, "", loc, Value::Str(std::move(value))});
  }

  void LexOp(int& depth) {
    static constexpr std::string_view kOps[] = {
        "//=", "<<=", ">>=", "==", "!=", "<=", ">=", "<<", ">>", "//", "+=",
        "-=",  "*=",  "/=",  "%=", "|=", "^=", "&=", "+",  "-",  "*",  "/",
        "%",   "<",   ">",   "=",  "|",  "^",  "&",  "(",  ")",  "[",  "]",
        ",",   ":"};
    Location loc = Here();
    for (std::string_view op : kOps) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) Advance();
        if (op == "(" || op == "[") ++depth;
        if ((op == ")" || op == "]") && depth > 0) --depth;
        out_.push_back({Tok::kOp, std::string(op), loc, {}});
        return;
      }
    }
    throw SyntaxError(std::string("unexpected character '") + src_[pos_] + "'",
                      loc);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  std::vector<Token> out_;
};

const std::set<std::string, std::less<>> kKeywords = {
    "def", "return", "while", "if",   "elif",  "else", "assert",
    "and", "or",     "not",   "True", "False", "None"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program Run() {
    Program program;
    std::set<std::string, std::less<>> names;
    while (Peek().kind != Tok::kEnd) {
      if (Peek().kind == Tok::kNewline) {
        Next();
        continue;
      }
      if (!IsKeyword("def")) {
        throw SyntaxError("top-level statement outside a function",
                          Peek().loc);
      }
      FunctionDef fn = ParseFunction();
      if (!names.insert(fn.name).second) {
        throw SyntaxError("duplicate function '" + fn.name + "'", fn.loc);
      }
      program.functions.push_back(std::move(fn));
    }
    return program;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const Token& Next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  bool IsOp(std::string_view op, std::size_t ahead = 0) const {
    return Peek(ahead).kind == Tok::kOp && Peek(ahead).text == op;
  }
  bool IsKeyword(std::string_view kw) const {
    return Peek().kind == Tok::kName && Peek().text == kw;
  }

  const Token& Expect(Tok kind, std::string_view what) {
    if (Peek().kind != kind) {
      throw SyntaxError("expected " + std::string(what), Peek().loc);
    }
    return Next();
  }
  void ExpectOp(std::string_view op) {
    if (!IsOp(op)) {
      throw SyntaxError("expected '" + std::string(op) + "'", Peek().loc);
    }
    Next();
  }
  void ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(kw)) {
      throw SyntaxError("expected '" + std::string(kw) + "'", Peek().loc);
    }
    Next();
  }
  std::string ExpectIdentifier() {
    const Token& tok = Expect(Tok::kName, "identifier");
    if (kKeywords.count(tok.text)) {
      throw SyntaxError("unexpected keyword '" + tok.text + "'", tok.loc);
    }
    return tok.text;
  }

  FunctionDef ParseFunction() {
    FunctionDef fn;
    fn.loc = Peek().loc;
    ExpectKeyword("def");
    fn.name = ExpectIdentifier();
    ExpectOp("(");
    std::set<std::string, std::less<>> seen;
    if (!IsOp(")")) {
      do {
        Location loc = Peek().loc;
        std::string param = ExpectIdentifier();
        if (!seen.insert(param).second) {
          throw SyntaxError("duplicate parameter '" + param + "'", loc);
        }
        fn.params.push_back(std::move(param));
      } while (IsOp(",") && (Next(), true));
    }
    ExpectOp(")");
    ExpectOp(":");
    fn.body = ParseBlock();
    return fn;
  }

  Block ParseBlock() {
    Expect(Tok::kNewline, "newline");
    Expect(Tok::kIndent, "indented block");
    Block block;
    while (Peek().kind != Tok::kDedent && Peek().kind != Tok::kEnd) {
      block.push_back(ParseStatement());
    }
    if (Peek().kind == Tok::kDedent) Next();
    return block;
  }

  Stmt ParseStatement() {
    Location loc = Peek().loc;
    if (IsKeyword("def")) {
      throw SyntaxError("nested function definitions are not supported", loc);
    }
    if (IsKeyword("while")) {
      Next();
      ExprPtr cond = ParseExpr();
      ExpectOp(":");
      return {loc, While{cond, ParseBlock()}};
    }
    if (IsKeyword("if")) {
      Next();
      return ParseIfTail(loc);
    }
    if (IsKeyword("return")) {
      Next();
      ExprPtr value;
      if (Peek().kind != Tok::kNewline) value = ParseExpr();
      EndOfStatement();
      return {loc, Return{value}};
    }
    if (IsKeyword("assert")) {
      Next();
      ExprPtr cond = ParseExpr();
      EndOfStatement();
      return {loc, Assert{cond}};
    }
    if (Peek().kind == Tok::kName && !kKeywords.count(Peek().text) &&
        Peek(1).kind == Tok::kOp) {
      const std::string& op = Peek(1).text;
      if (op == "=") {
        std::string target = ExpectIdentifier();
        Next();
        ExprPtr value = ParseExpr();
        EndOfStatement();
        return {loc, Assign{std::move(target), value}};
      }
      if (op.size() >= 2 && op.back() == '=' && op != "==" && op != "!=" &&
          op != "<=" && op != ">=") {
        std::string target = ExpectIdentifier();
        const Token& op_tok = Next();
        auto bin = ParseBinaryOp(op_tok.text.substr(0, op_tok.text.size() - 1));
        ExprPtr value = ParseExpr();
        EndOfStatement();
        return {loc, AugAssign{std::move(target), *bin, op_tok.loc, value}};
      }
    }
    ExprPtr expr = ParseExpr();
    EndOfStatement();
    return {loc, ExprStmt{expr}};
  }

  Stmt ParseIfTail(Location loc) {
    ExprPtr cond = ParseExpr();
    ExpectOp(":");
    If node{cond, ParseBlock(), {}};
    if (IsKeyword("elif")) {
      Location elif_loc = Peek().loc;
      Next();
      node.else_body.push_back(ParseIfTail(elif_loc));
    } else if (IsKeyword("else")) {
      Next();
      ExpectOp(":");
      node.else_body = ParseBlock();
    }
    return {loc, std::move(node)};
  }

  void EndOfStatement() {
    if (Peek().kind == Tok::kEnd || Peek().kind == Tok::kDedent) return;
    Expect(Tok::kNewline, "end of statement");
  }

  ExprPtr ParseExpr() { return ParseOr(); }

  ExprPtr ParseOr() {
    ExprPtr lhs = ParseAnd();
    while (IsKeyword("or")) {
      Location loc = Next().loc;
      lhs = MakeExpr(loc, Logical{LogicalOp::kOr, lhs, ParseAnd()});
    }
    return lhs;
  }

  ExprPtr ParseAnd() {
    ExprPtr lhs = ParseNot();
    while (IsKeyword("and")) {
      Location loc = Next().loc;
      lhs = MakeExpr(loc, Logical{LogicalOp::kAnd, lhs, ParseNot()});
    }
    return lhs;
  }

  ExprPtr ParseNot() {
    if (IsKeyword("not")) {
      Location loc = Next().loc;
      return MakeExpr(loc, Unary{UnaryOp::kNot, ParseNot()});
    }
    return ParseComparison();
  }

  std::optional<BinaryOp> PeekOp(std::initializer_list<BinaryOp> ops) const {
    if (Peek().kind != Tok::kOp) return std::nullopt;
    for (BinaryOp op : ops) {
      if (Peek().text == Spelling(op)) return op;
    }
    return std::nullopt;
  }

  ExprPtr ParseComparison() {
    ExprPtr lhs = ParseBinaryLevel(0);
    if (auto op = PeekOp({BinaryOp::kEq, BinaryOp::kNe, BinaryOp::kLt,
                          BinaryOp::kLe, BinaryOp::kGt, BinaryOp::kGe})) {
      Location loc = Next().loc;
      ExprPtr rhs = ParseBinaryLevel(0);
      if (PeekOp({BinaryOp::kEq, BinaryOp::kNe, BinaryOp::kLt, BinaryOp::kLe,
                  BinaryOp::kGt, BinaryOp::kGe})) {
        throw SyntaxError("chained comparisons are not supported", Peek().loc);
      }
      return MakeExpr(loc, Binary{*op, lhs, rhs});
    }
    return lhs;
  }

  // Levels from loosest to tightest: | ^ & shifts additive multiplicative.
  ExprPtr ParseBinaryLevel(int level) {
    static const std::vector<std::vector<BinaryOp>> kLevels = {
        {BinaryOp::kBitOr},
        {BinaryOp::kBitXor},
        {BinaryOp::kBitAnd},
        {BinaryOp::kShl, BinaryOp::kShr},
        {BinaryOp::kAdd, BinaryOp::kSub},
        {BinaryOp::kMul, BinaryOp::kDiv, BinaryOp::kFloorDiv, BinaryOp::kMod},
    };
    if (level == static_cast<int>(kLevels.size())) return ParseUnary();
    ExprPtr lhs = ParseBinaryLevel(level + 1);
    while (true) {
      std::optional<BinaryOp> match;
      if (Peek().kind == Tok::kOp) {
        for (BinaryOp op : kLevels[level]) {
          if (Peek().text == Spelling(op)) match = op;
        }
      }
      if (!match) return lhs;
      Location loc = Next().loc;
      lhs = MakeExpr(loc, Binary{*match, lhs, ParseBinaryLevel(level + 1)});
    }
  }

  ExprPtr ParseUnary() {
    if (IsOp("-")) {
      Location loc = Next().loc;
      return MakeExpr(loc, Unary{UnaryOp::kNeg, ParseUnary()});
    }
    return ParsePostfix();
  }

  ExprPtr ParsePostfix() {
    ExprPtr expr = ParsePrimary();
    while (IsOp("[")) {
      Location loc = Next().loc;
      ExprPtr index = ParseExpr();
      ExpectOp("]");
      expr = MakeExpr(loc, Subscript{expr, index});
    }
    return expr;
  }

  ExprPtr ParsePrimary() {
    const Token& tok = Peek();
    Location loc = tok.loc;
    switch (tok.kind) {
      case Tok::kInt:
      case Tok::kFloat:
      case Tok::kString:
        Next();
        return MakeExpr(loc, Literal{tok.literal});
      case Tok::kName: {
        if (tok.text == "True" || tok.text == "False") {
          Next();
          return MakeExpr(loc, Literal{Value::Bool(tok.text == "True")});
        }
        if (tok.text == "None") {
          Next();
          return MakeExpr(loc, Literal{Value::None()});
        }
        std::string name = ExpectIdentifier();
        if (IsOp("(")) {
          Next();
          std::vector<ExprPtr> args;
          if (!IsOp(")")) {
            do {
              args.push_back(ParseExpr());
            } while (IsOp(",") && (Next(), true));
          }
          ExpectOp(")");
          return MakeExpr(loc, Call{std::move(name), std::move(args)});
        }
        return MakeExpr(loc, Variable{std::move(name)});
      }
      case Tok::kOp:
        if (tok.text == "(") {
          Next();
          ExprPtr inner = ParseExpr();
          ExpectOp(")");
          return inner;
        }
        if (tok.text == "[") {
          Next();
          std::vector<ExprPtr> elements;
          if (!IsOp("]")) {
            do {
              elements.push_back(ParseExpr());
            } while (IsOp(",") && (Next(), true));
          }
          ExpectOp("]");
          return MakeExpr(loc, ListLiteral{std::move(elements)});
        }
        break;
      default:
        break;
    }
    throw SyntaxError("expected expression", loc);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Program ParseProgram(std::string_view source) {
  return Parser(Lexer(source).Run()).Run();
}

}  // namespace mutlab
