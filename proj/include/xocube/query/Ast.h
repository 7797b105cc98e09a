////////////////////////////////////////////////////////////////////////////////
/// Copyright 2026 The xocube Authors
///
/// Licensed under the Apache License, Version 2.0 (the "License");
/// you may not use this file except in compliance with the License.
/// You may obtain a copy of the License at
///
///     http://www.apache.org/licenses/LICENSE-2.0
///
/// Unless required by applicable law or agreed to in writing, software
/// distributed under the License is distributed on an "AS IS" BASIS,
/// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
/// See the License for the specific language governing permissions and
/// limitations under the License.
////////////////////////////////////////////////////////////////////////////////

#pragma once

#include "xocube/Decimal.h"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace xocube::query {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class Axis : std::uint8_t {
  Child,
  /// `//name`: descendant-or-self::node()/child::name (or attribute::name)
  Descendant,
};

struct Step {
  Axis axis = Axis::Child;
  bool attribute = false;
  std::string name;
  std::vector<ExprPtr> predicates;
  /// Dense per-query number, lets the evaluator cache per-step data.
  std::size_t id = 0;
};

enum class PathStart : std::uint8_t {
  Context,  // relative: `a/b`, `.//@id`
  Root,     // `/a`, `//a`: document nodes of every document in scope
  Base,     // `$x/a`, `f()/a`
};

struct PathExpr {
  PathStart start = PathStart::Context;
  ExprPtr base;  // set iff start == Base
  std::vector<Step> steps;
};

struct Literal {
  std::variant<std::string, std::int64_t, Decimal> value;
};

struct VarRef {
  std::string name;
  std::size_t slot = 0;
};

struct ContextItem {};

/// `primary[pred]...`
struct FilterExpr {
  ExprPtr base;
  std::vector<ExprPtr> predicates;
};

enum class CompOp : std::uint8_t { ValueEq, ValueNe, GeneralEq, GeneralNe };

struct Comparison {
  CompOp op = CompOp::GeneralEq;
  ExprPtr lhs;
  ExprPtr rhs;
};

enum class LogicalOp : std::uint8_t { And, Or };

struct Logical {
  LogicalOp op = LogicalOp::And;
  std::vector<ExprPtr> operands;
};

struct FunctionCall {
  std::string name;
  std::vector<ExprPtr> args;
};

/// `(a, b)`; `()` is the empty sequence.
struct SequenceExpr {
  std::vector<ExprPtr> items;
};

/// Literal text (expr == nullptr) or an enclosed `{expr}`.
struct ContentPart {
  std::string text;
  ExprPtr expr;
};

struct AttributeTemplate {
  std::string name;
  std::vector<ContentPart> parts;
};

struct ElementConstructor {
  std::string name;
  std::vector<AttributeTemplate> attributes;
  std::vector<ContentPart> content;
};

enum class ClauseKind : std::uint8_t { For, Let };

struct Clause {
  ClauseKind kind = ClauseKind::For;
  VarRef var;
  ExprPtr expr;
  /// No variable bound by an earlier clause of the same FLWOR occurs in
  /// `expr`, so it can be evaluated once per FLWOR evaluation.
  bool invariant = false;
};

/// `group $a, $b by $k1, $k2`
struct GroupByClause {
  std::vector<VarRef> retained;
  std::vector<VarRef> keys;
};

struct Flwor {
  std::vector<Clause> clauses;
  ExprPtr where;
  std::optional<GroupByClause> groupBy;
  ExprPtr ret;
};

struct Expr {
  std::variant<Literal, VarRef, ContextItem, PathExpr, FilterExpr, Comparison,
               Logical, FunctionCall, SequenceExpr, ElementConstructor, Flwor>
      node;
  std::size_t offset = 0;  // source position

  template <typename T>
  T const* as() const noexcept {
    return std::get_if<T>(&node);
  }
  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(node);
  }
};

template <typename T>
ExprPtr makeExpr(T node, std::size_t offset = 0) {
  auto e = std::make_unique<Expr>();
  e->node = std::move(node);
  e->offset = offset;
  return e;
}

/// A parsed, scope-checked query. Every variable binding owns one slot in
/// [0, slotCount).
struct Query {
  ExprPtr body;
  std::size_t slotCount = 0;
  std::size_t stepCount = 0;
};

/// Parses the subset grammar documented in docs/grammar.ebnf.
/// Throws SyntaxError (line/column) or UnboundVariable.
Query parseQuery(std::string_view text);

/// Query text that parses back to an equivalent AST.
std::string toString(Query const& query);
std::string toString(Expr const& expr);

/// True if evaluating `expr` reads the focus (context item), not counting
/// predicates, which carry their own focus.
bool usesFocus(Expr const& expr);

/// Slots of the variables referenced anywhere inside `expr`.
void collectVariables(Expr const& expr, std::vector<std::size_t>& out);

}  // namespace xocube::query
