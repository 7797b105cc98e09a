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

#include "xocube/query/Ast.h"

#include <string>

namespace xocube::query {

namespace {

// Binding strength of an expression form; operands weaker than their
// position requires are parenthesized.
enum Prec : int { kSingle = 0, kOr, kAnd, kComparison, kPath, kPrimary };

int precedence(Expr const& e) {
  if (e.is<Flwor>()) {
    return kSingle;
  }
  if (auto const* l = e.as<Logical>()) {
    return l->op == LogicalOp::Or ? kOr : kAnd;
  }
  if (e.is<Comparison>()) {
    return kComparison;
  }
  if (e.is<PathExpr>()) {
    return kPath;
  }
  return kPrimary;
}

char const* opText(CompOp op) {
  switch (op) {
    case CompOp::ValueEq:
      return " eq ";
    case CompOp::ValueNe:
      return " ne ";
    case CompOp::GeneralEq:
      return " = ";
    case CompOp::GeneralNe:
      return " != ";
  }
  return " = ";
}

void escapeTemplateText(std::string_view text, bool attribute,
                        std::string& out) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '{':
        out += "{{";
        break;
      case '}':
        out += "}}";
        break;
      case '"':
        out += attribute ? "&quot;" : "\"";
        break;
      default:
        out.push_back(c);
    }
  }
}

class Printer {
 public:
  explicit Printer(std::string& out) : _out(out) {}

  void print(Expr const& e, int required, int indent) {
    bool parens = precedence(e) < required;
    if (parens) {
      _out.push_back('(');
    }
    std::visit([&](auto const& n) { printNode(n, indent); }, e.node);
    if (parens) {
      _out.push_back(')');
    }
  }

 private:
  void newline(int indent) {
    _out.push_back('\n');
    _out.append(std::size_t(indent) * 2, ' ');
  }

  void printNode(Literal const& l, int) {
    if (auto const* s = std::get_if<std::string>(&l.value)) {
      _out.push_back('"');
      for (char c : *s) {
        if (c == '"') {
          _out += "\"\"";
        } else if (c == '&') {
          _out += "&amp;";
        } else {
          _out.push_back(c);
        }
      }
      _out.push_back('"');
    } else if (auto const* i = std::get_if<std::int64_t>(&l.value)) {
      _out += std::to_string(*i);
    } else {
      std::string d = std::get<Decimal>(l.value).toString();
      if (d.find('.') == std::string::npos) {
        d += ".0";
      }
      _out += d;
    }
  }

  void printNode(VarRef const& v, int) {
    _out.push_back('$');
    _out += v.name;
  }

  void printNode(ContextItem const&, int) { _out.push_back('.'); }

  void printPredicates(std::vector<ExprPtr> const& preds, int indent) {
    for (auto const& p : preds) {
      _out.push_back('[');
      print(*p, kSingle, indent);
      _out.push_back(']');
    }
  }

  void printStep(Step const& s, int indent) {
    if (s.attribute) {
      _out.push_back('@');
    }
    _out += s.name;
    printPredicates(s.predicates, indent);
  }

  void printNode(PathExpr const& p, int indent) {
    if (p.start == PathStart::Root && p.steps.empty()) {
      _out += "(/)";
      return;
    }
    bool first = true;
    for (auto const& s : p.steps) {
      bool descendant = s.axis == Axis::Descendant;
      if (first && p.start == PathStart::Context) {
        if (descendant) {
          _out += ".//";
        }
      } else {
        if (first && p.start == PathStart::Base) {
          print(*p.base, kPrimary, indent);
        }
        _out += descendant ? "//" : "/";
      }
      first = false;
      printStep(s, indent);
    }
  }

  void printNode(FilterExpr const& f, int indent) {
    print(*f.base, kPrimary, indent);
    printPredicates(f.predicates, indent);
  }

  void printNode(Comparison const& c, int indent) {
    print(*c.lhs, kPath, indent);
    _out += opText(c.op);
    print(*c.rhs, kPath, indent);
  }

  void printNode(Logical const& l, int indent) {
    bool isOr = l.op == LogicalOp::Or;
    for (std::size_t i = 0; i < l.operands.size(); ++i) {
      if (i > 0) {
        _out += isOr ? " or " : " and ";
      }
      print(*l.operands[i], isOr ? kAnd : kComparison, indent);
    }
  }

  void printNode(FunctionCall const& f, int indent) {
    _out += f.name;
    _out.push_back('(');
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      if (i > 0) {
        _out += ", ";
      }
      print(*f.args[i], kSingle, indent);
    }
    _out.push_back(')');
  }

  void printNode(SequenceExpr const& s, int indent) {
    _out.push_back('(');
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (i > 0) {
        _out += ", ";
      }
      print(*s.items[i], kSingle, indent);
    }
    _out.push_back(')');
  }

  void printParts(std::vector<ContentPart> const& parts, bool attribute,
                  int indent) {
    for (auto const& part : parts) {
      if (!part.expr) {
        escapeTemplateText(part.text, attribute, _out);
      } else if (part.expr->is<ElementConstructor>() && !attribute) {
        print(*part.expr, kPrimary, indent);
      } else {
        _out.push_back('{');
        print(*part.expr, kSingle, indent);
        _out.push_back('}');
      }
    }
  }

  void printNode(ElementConstructor const& c, int indent) {
    _out.push_back('<');
    _out += c.name;
    for (auto const& a : c.attributes) {
      _out.push_back(' ');
      _out += a.name;
      _out += "=\"";
      printParts(a.parts, true, indent);
      _out.push_back('"');
    }
    if (c.content.empty()) {
      _out += "/>";
      return;
    }
    _out.push_back('>');
    printParts(c.content, false, indent);
    _out += "</";
    _out += c.name;
    _out.push_back('>');
  }

  void printNode(Flwor const& f, int indent) {
    bool first = true;
    for (auto const& c : f.clauses) {
      if (!first) {
        newline(indent);
      }
      first = false;
      if (c.kind == ClauseKind::For) {
        _out += "for $" + c.var.name + " in ";
      } else {
        _out += "let $" + c.var.name + " := ";
      }
      print(*c.expr, kSingle, indent + 1);
    }
    if (f.where) {
      newline(indent);
      _out += "where ";
      print(*f.where, kSingle, indent + 1);
    }
    if (f.groupBy) {
      newline(indent);
      _out += "group";
      auto vars = [&](std::vector<VarRef> const& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i) {
          _out += i == 0 ? " $" : ", $";
          _out += vs[i].name;
        }
      };
      vars(f.groupBy->retained);
      _out += " by";
      vars(f.groupBy->keys);
    }
    newline(indent);
    _out += "return ";
    print(*f.ret, kSingle, indent + 1);
  }

  std::string& _out;
};

}  // namespace

std::string toString(Expr const& expr) {
  std::string out;
  Printer(out).print(expr, kSingle, 0);
  return out;
}

std::string toString(Query const& query) { return toString(*query.body); }

}  // namespace xocube::query
