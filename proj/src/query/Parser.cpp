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

#include "Scanner.h"

#include "xocube/Errors.h"
#include "xocube/query/Ast.h"

#include <algorithm>

namespace xocube::query {

namespace {

struct FunctionSignature {
  std::string_view name;
  std::size_t arity;
};

constexpr FunctionSignature kFunctions[] = {
    {"distinct-values", 1}, {"sum", 1}, {"string", 1},
    {"exists", 1},          {"count", 1},
};

bool isSpaceOnly(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : _s(text) {}

  Query parse() {
    Query q;
    q.body = parseExpr();
    if (!_s.atEnd()) {
      _s.fail("unexpected input");
    }
    q.slotCount = _slots;
    q.stepCount = _steps;
    return q;
  }

 private:
  ExprPtr parseExpr() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    ExprPtr first = parseExprSingle();
    if (!_s.consume(",")) {
      return first;
    }
    SequenceExpr seq;
    seq.items.push_back(std::move(first));
    do {
      seq.items.push_back(parseExprSingle());
    } while (_s.consume(","));
    return makeExpr(std::move(seq), off);
  }

  bool atClauseStart(std::string_view keyword) {
    std::size_t save = _s.offset();
    bool result = false;
    if (_s.consumeKeyword(keyword)) {
      _s.skipSpace();
      result = _s.peek() == '$';
    }
    _s.reset(save);
    return result;
  }

  ExprPtr parseExprSingle() {
    if (atClauseStart("for") || atClauseStart("let")) {
      return parseFlwor();
    }
    return parseOr();
  }

  VarRef readVariableName() {
    _s.expect("$");
    VarRef v;
    v.name = _s.readName();
    return v;
  }

  VarRef resolve(std::string name) {
    for (auto it = _scope.rbegin(); it != _scope.rend(); ++it) {
      if (it->name == name) {
        return *it;
      }
    }
    throw UnboundVariable(std::move(name));
  }

  ExprPtr parseFlwor() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    std::size_t scopeMark = _scope.size();
    std::vector<std::size_t> bound;
    Flwor f;
    for (;;) {
      ClauseKind kind;
      if (atClauseStart("for")) {
        kind = ClauseKind::For;
      } else if (atClauseStart("let")) {
        kind = ClauseKind::Let;
      } else {
        break;
      }
      _s.consumeKeyword(kind == ClauseKind::For ? "for" : "let");
      do {
        Clause c;
        c.kind = kind;
        c.var = readVariableName();
        if (kind == ClauseKind::For) {
          _s.expectKeyword("in");
        } else {
          _s.expect(":=");
        }
        c.expr = parseExprSingle();
        std::vector<std::size_t> used;
        collectVariables(*c.expr, used);
        c.invariant = std::none_of(used.begin(), used.end(), [&](std::size_t s) {
          return std::find(bound.begin(), bound.end(), s) != bound.end();
        });
        c.var.slot = _slots++;
        bound.push_back(c.var.slot);
        _scope.push_back(c.var);
        f.clauses.push_back(std::move(c));
      } while (_s.consume(","));
    }
    if (_s.consumeKeyword("where")) {
      f.where = parseExprSingle();
    }
    if (_s.consumeKeyword("group")) {
      GroupByClause g;
      auto readGroupVar = [&]() {
        _s.skipSpace();
        std::size_t at = _s.offset();
        VarRef v = resolve(readVariableName().name);
        if (std::find(bound.begin(), bound.end(), v.slot) == bound.end()) {
          _s.fail("$" + v.name + " is not bound by this FLWOR expression", at);
        }
        return v;
      };
      if (!_s.peekKeyword("by")) {
        do {
          g.retained.push_back(readGroupVar());
        } while (_s.consume(","));
      }
      _s.expectKeyword("by");
      do {
        g.keys.push_back(readGroupVar());
      } while (_s.consume(","));
      f.groupBy = std::move(g);
    }
    _s.expectKeyword("return");
    f.ret = parseExprSingle();
    _scope.resize(scopeMark);
    return makeExpr(std::move(f), off);
  }

  ExprPtr parseOr() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    ExprPtr first = parseAnd();
    if (!_s.peekKeyword("or")) {
      return first;
    }
    Logical l{LogicalOp::Or, {}};
    l.operands.push_back(std::move(first));
    while (_s.consumeKeyword("or")) {
      l.operands.push_back(parseAnd());
    }
    return makeExpr(std::move(l), off);
  }

  ExprPtr parseAnd() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    ExprPtr first = parseComparison();
    if (!_s.peekKeyword("and")) {
      return first;
    }
    Logical l{LogicalOp::And, {}};
    l.operands.push_back(std::move(first));
    while (_s.consumeKeyword("and")) {
      l.operands.push_back(parseComparison());
    }
    return makeExpr(std::move(l), off);
  }

  ExprPtr parseComparison() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    ExprPtr lhs = parsePath();
    CompOp op;
    if (_s.consumeKeyword("eq")) {
      op = CompOp::ValueEq;
    } else if (_s.consumeKeyword("ne")) {
      op = CompOp::ValueNe;
    } else if (_s.consume("!=")) {
      op = CompOp::GeneralNe;
    } else if (_s.peek() == '=') {
      _s.get();
      op = CompOp::GeneralEq;
    } else {
      return lhs;
    }
    Comparison c{op, std::move(lhs), parsePath()};
    return makeExpr(std::move(c), off);
  }

  bool atFunctionCall() {
    if (!_s.atNameStart()) {
      return false;
    }
    std::size_t save = _s.offset();
    _s.readName();
    _s.skipSpace();
    bool call = _s.peek() == '(' && _s.peek(1) != ':';
    _s.reset(save);
    return call;
  }

  ExprPtr parsePath() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    PathExpr path;
    if (_s.consume("//")) {
      path.start = PathStart::Root;
      path.steps.push_back(parseStep(Axis::Descendant));
    } else if (_s.consume("/")) {
      path.start = PathStart::Root;
      _s.skipSpace();
      if (_s.peek() == '@' || _s.atNameStart()) {
        path.steps.push_back(parseStep(Axis::Child));
      }
    } else if (_s.peek() == '@' || (_s.atNameStart() && !atFunctionCall())) {
      path.start = PathStart::Context;
      path.steps.push_back(parseStep(Axis::Child));
    } else {
      ExprPtr primary = parsePrimary();
      std::vector<ExprPtr> preds = parsePredicates();
      if (!preds.empty()) {
        primary = makeExpr(FilterExpr{std::move(primary), std::move(preds)}, off);
      }
      _s.skipSpace();
      if (!_s.startsWith("/") || _s.startsWith("/>")) {
        return primary;
      }
      if (primary->is<ContextItem>()) {
        path.start = PathStart::Context;
      } else {
        path.start = PathStart::Base;
        path.base = std::move(primary);
      }
      path.steps.push_back(parseNextStep());
    }
    for (;;) {
      _s.skipSpace();
      if (!_s.startsWith("/") || _s.startsWith("/>")) {
        break;
      }
      path.steps.push_back(parseNextStep());
    }
    return makeExpr(std::move(path), off);
  }

  Step parseNextStep() {
    if (_s.consume("//")) {
      return parseStep(Axis::Descendant);
    }
    _s.expect("/");
    return parseStep(Axis::Child);
  }

  Step parseStep(Axis axis) {
    Step step;
    step.axis = axis;
    step.id = _steps++;
    _s.skipSpace();
    if (_s.peek() == '.') {
      _s.fail("'.' and '..' steps are not supported after '/'");
    }
    step.attribute = _s.consume("@");
    _s.skipSpace();
    step.name = _s.readName();
    if (_s.peek() == ':' && _s.peek(1) == ':') {
      _s.fail("explicit axes are not supported");
    }
    step.predicates = parsePredicates();
    return step;
  }

  std::vector<ExprPtr> parsePredicates() {
    std::vector<ExprPtr> preds;
    while (_s.consume("[")) {
      preds.push_back(parseExpr());
      _s.expect("]");
    }
    return preds;
  }

  ExprPtr parsePrimary() {
    _s.skipSpace();
    std::size_t off = _s.offset();
    char c = _s.peek();
    if (c == '$') {
      std::string name = readVariableName().name;
      return makeExpr(resolve(std::move(name)), off);
    }
    if (c == '"' || c == '\'') {
      return makeExpr(Literal{_s.readStringLiteral()}, off);
    }
    if ((c >= '0' && c <= '9') || (c == '.' && _s.peek(1) >= '0' && _s.peek(1) <= '9')) {
      return makeExpr(readNumber(), off);
    }
    if (c == '.') {
      if (_s.peek(1) == '.') {
        _s.fail("parent steps are not supported");
      }
      _s.get();
      return makeExpr(ContextItem{}, off);
    }
    if (c == '(') {
      _s.get();
      if (_s.consume(")")) {
        return makeExpr(SequenceExpr{}, off);
      }
      ExprPtr inner = parseExpr();
      _s.expect(")");
      return inner;
    }
    if (c == '<') {
      return parseConstructor();
    }
    if (atFunctionCall()) {
      return parseFunctionCall();
    }
    if (c == '\0') {
      _s.fail("unexpected end of query");
    }
    _s.fail("expected an expression");
  }

  Literal readNumber() {
    std::size_t start = _s.offset();
    bool dot = false;
    while ((_s.peek() >= '0' && _s.peek() <= '9') || (_s.peek() == '.' && !dot)) {
      dot = dot || _s.peek() == '.';
      _s.get();
    }
    if (_s.peek() == 'e' || _s.peek() == 'E' || detail::Scanner::isNameStart(_s.peek())) {
      _s.fail("unsupported numeric literal", start);
    }
    std::string_view digits = _s.text().substr(start, _s.offset() - start);
    auto value = Decimal::parse(digits);
    if (!value) {
      _s.fail("numeric literal out of range", start);
    }
    if (!dot) {
      return Literal{value->units()};
    }
    return Literal{*value};
  }

  ExprPtr parseFunctionCall() {
    std::size_t off = _s.offset();
    FunctionCall call;
    call.name = _s.readName();
    auto sig = std::find_if(std::begin(kFunctions), std::end(kFunctions),
                            [&](auto const& f) { return f.name == call.name; });
    if (sig == std::end(kFunctions)) {
      _s.fail("unknown function " + call.name + "()", off);
    }
    _s.expect("(");
    if (!_s.consume(")")) {
      do {
        call.args.push_back(parseExprSingle());
      } while (_s.consume(","));
      _s.expect(")");
    }
    if (call.args.size() != sig->arity) {
      _s.fail(call.name + "() expects " + std::to_string(sig->arity) +
                  " argument(s)",
              off);
    }
    return makeExpr(std::move(call), off);
  }

  // Element constructors are scanned character by character: whitespace
  // and comments are significant inside content.
  ExprPtr parseConstructor() {
    std::size_t off = _s.offset();
    _s.get();  // '<'
    ElementConstructor ctor;
    ctor.name = _s.readName();
    for (;;) {
      _s.skipWhitespace();
      if (_s.startsWith("/>")) {
        _s.reset(_s.offset() + 2);
        return makeExpr(std::move(ctor), off);
      }
      if (_s.peek() == '>') {
        _s.get();
        break;
      }
      AttributeTemplate attr;
      attr.name = _s.readName();
      for (auto const& other : ctor.attributes) {
        if (other.name == attr.name) {
          _s.fail("duplicate attribute " + attr.name);
        }
      }
      _s.skipWhitespace();
      if (_s.get() != '=') {
        _s.fail("expected '=' after attribute name");
      }
      _s.skipWhitespace();
      char quote = _s.get();
      if (quote != '"' && quote != '\'') {
        _s.fail("expected quoted attribute value");
      }
      std::string text;
      for (;;) {
        char c = _s.peek();
        if (c == '\0') {
          _s.fail("unterminated attribute value");
        }
        if (c == quote) {
          if (_s.peek(1) == quote) {
            text.push_back(quote);
            _s.reset(_s.offset() + 2);
            continue;
          }
          _s.get();
          break;
        }
        if (readTemplateChar(text, attr.parts)) {
          continue;
        }
        if (c == '<') {
          _s.fail("'<' is not allowed in attribute values");
        }
        text.push_back(_s.get());
      }
      if (!text.empty()) {
        attr.parts.push_back(ContentPart{std::move(text), nullptr});
      }
      ctor.attributes.push_back(std::move(attr));
    }
    std::string text;
    auto flush = [&]() {
      if (!text.empty() && !isSpaceOnly(text)) {
        ctor.content.push_back(ContentPart{std::move(text), nullptr});
      }
      text.clear();
    };
    for (;;) {
      char c = _s.peek();
      if (c == '\0') {
        _s.fail("unterminated element constructor <" + ctor.name + ">", off);
      }
      if (_s.startsWith("</")) {
        flush();
        _s.reset(_s.offset() + 2);
        std::string closing = _s.readName();
        if (closing != ctor.name) {
          _s.fail("mismatched end tag </" + closing + ">, expected </" +
                  ctor.name + ">");
        }
        _s.skipWhitespace();
        if (_s.get() != '>') {
          _s.fail("expected '>'");
        }
        return makeExpr(std::move(ctor), off);
      }
      if (c == '<') {
        flush();
        ctor.content.push_back(ContentPart{{}, parseConstructor()});
        continue;
      }
      if (c == '{' && !_s.startsWith("{{")) {
        flush();
      }
      if (readTemplateChar(text, ctor.content)) {
        continue;
      }
      text.push_back(_s.get());
    }
  }

  // Handles `{{`, `}}`, `{expr}` and references shared by attribute values
  // and element content. Returns false if the current char is plain text.
  bool readTemplateChar(std::string& text, std::vector<ContentPart>& parts) {
    if (_s.startsWith("{{")) {
      text.push_back('{');
      _s.reset(_s.offset() + 2);
      return true;
    }
    if (_s.startsWith("}}")) {
      text.push_back('}');
      _s.reset(_s.offset() + 2);
      return true;
    }
    char c = _s.peek();
    if (c == '{') {
      if (!text.empty()) {
        parts.push_back(ContentPart{std::move(text), nullptr});
        text.clear();
      }
      _s.get();
      parts.push_back(ContentPart{{}, parseExpr()});
      _s.expect("}");
      return true;
    }
    if (c == '}') {
      _s.fail("unescaped '}' in constructor");
    }
    if (c == '&') {
      _s.readReference(text);
      return true;
    }
    return false;
  }

  detail::Scanner _s;
  std::vector<VarRef> _scope;
  std::size_t _slots = 0;
  std::size_t _steps = 0;
};

}  // namespace

Query parseQuery(std::string_view text) { return Parser(text).parse(); }

bool usesFocus(Expr const& expr) {
  return std::visit(
      [](auto const& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ContextItem>) {
          return true;
        } else if constexpr (std::is_same_v<T, PathExpr>) {
          return n.start == PathStart::Context ||
                 (n.start == PathStart::Base && usesFocus(*n.base));
        } else if constexpr (std::is_same_v<T, FilterExpr>) {
          return usesFocus(*n.base);
        } else if constexpr (std::is_same_v<T, Comparison>) {
          return usesFocus(*n.lhs) || usesFocus(*n.rhs);
        } else if constexpr (std::is_same_v<T, Logical>) {
          return std::any_of(n.operands.begin(), n.operands.end(),
                             [](auto const& e) { return usesFocus(*e); });
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          return std::any_of(n.args.begin(), n.args.end(),
                             [](auto const& e) { return usesFocus(*e); });
        } else if constexpr (std::is_same_v<T, SequenceExpr>) {
          return std::any_of(n.items.begin(), n.items.end(),
                             [](auto const& e) { return usesFocus(*e); });
        } else if constexpr (std::is_same_v<T, ElementConstructor>) {
          auto parts = [](std::vector<ContentPart> const& ps) {
            return std::any_of(ps.begin(), ps.end(), [](auto const& p) {
              return p.expr && usesFocus(*p.expr);
            });
          };
          return parts(n.content) ||
                 std::any_of(n.attributes.begin(), n.attributes.end(),
                             [&](auto const& a) { return parts(a.parts); });
        } else if constexpr (std::is_same_v<T, Flwor>) {
          return std::any_of(n.clauses.begin(), n.clauses.end(),
                             [](auto const& c) { return usesFocus(*c.expr); }) ||
                 (n.where && usesFocus(*n.where)) || usesFocus(*n.ret);
        } else {
          return false;
        }
      },
      expr.node);
}

void collectVariables(Expr const& expr, std::vector<std::size_t>& out) {
  auto all = [&](auto const& exprs) {
    for (auto const& e : exprs) {
      collectVariables(*e, out);
    }
  };
  auto steps = [&](std::vector<Step> const& ss) {
    for (auto const& s : ss) {
      all(s.predicates);
    }
  };
  auto parts = [&](std::vector<ContentPart> const& ps) {
    for (auto const& p : ps) {
      if (p.expr) {
        collectVariables(*p.expr, out);
      }
    }
  };
  std::visit(
      [&](auto const& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          out.push_back(n.slot);
        } else if constexpr (std::is_same_v<T, PathExpr>) {
          if (n.base) {
            collectVariables(*n.base, out);
          }
          steps(n.steps);
        } else if constexpr (std::is_same_v<T, FilterExpr>) {
          collectVariables(*n.base, out);
          all(n.predicates);
        } else if constexpr (std::is_same_v<T, Comparison>) {
          collectVariables(*n.lhs, out);
          collectVariables(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Logical>) {
          all(n.operands);
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          all(n.args);
        } else if constexpr (std::is_same_v<T, SequenceExpr>) {
          all(n.items);
        } else if constexpr (std::is_same_v<T, ElementConstructor>) {
          parts(n.content);
          for (auto const& a : n.attributes) {
            parts(a.parts);
          }
        } else if constexpr (std::is_same_v<T, Flwor>) {
          for (auto const& c : n.clauses) {
            collectVariables(*c.expr, out);
          }
          if (n.where) {
            collectVariables(*n.where, out);
          }
          collectVariables(*n.ret, out);
        }
      },
      expr.node);
}

}  // namespace xocube::query
