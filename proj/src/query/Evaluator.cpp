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

#include "xocube/query/Evaluator.h"

#include "xocube/Errors.h"
#include "xocube/query/Functions.h"

#include <algorithm>
#include <forward_list>
#include <unordered_set>

namespace xocube::query {

namespace {

using xml::Document;
using xml::Node;
using xml::NodeId;
using xml::NodeKind;
using xml::Symbol;
using NodeList = std::vector<NodeRef>;

bool matchesTest(Document const& doc, NodeId id, Step const& step,
                 Symbol sym) {
  Node const& n = doc.node(id);
  NodeKind want = step.attribute ? NodeKind::Attribute : NodeKind::Element;
  return n.kind == want && n.name == sym;
}

/// Node ids named `sym` strictly inside the subtree of `id`.
std::span<NodeId const> descendantsNamed(Document const& doc, NodeId id,
                                         Step const& step, Symbol sym) {
  auto all = step.attribute ? doc.attributesNamed(sym) : doc.elementsNamed(sym);
  auto lo = std::upper_bound(all.begin(), all.end(), id);
  auto hi = std::upper_bound(lo, all.end(), doc.last(id));
  return {lo, hi};
}

bool isProbePath(Expr const& e, ValueIndex const& index) {
  auto const* p = e.as<PathExpr>();
  if (p == nullptr || p->start != PathStart::Context || p->steps.empty()) {
    return false;
  }
  Step const& last = p->steps.back();
  return index.covers(last.name,
                      last.attribute ? NodeKind::Attribute : NodeKind::Element);
}

class Evaluator {
 public:
  Evaluator(Query const& query, DocumentSet const& docs,
            ValueIndex const* index, EvalStats* stats)
      : _docs(docs),
        _index(index),
        _stats(stats),
        _slots(query.slotCount),
        _symbols(query.stepCount) {}

  Sequence eval(Expr const& e, Item const* focus) {
    return std::visit([&](auto const& n) { return evalNode(n, focus); },
                      e.node);
  }

  std::vector<std::unique_ptr<Document>> takeArena() {
    return std::move(_arena);
  }

 private:
  /// Name symbol of a step's name test in `doc`, cached per step.
  Symbol symbolFor(Step const& step, Document const& doc) {
    auto& entry = _symbols[step.id];
    if (entry.first != &doc) {
      entry = {&doc, doc.symbol(step.name)};
    }
    return entry.second;
  }

  /// Avoids copying variable values that are only read.
  Sequence const& evalRef(Expr const& e, Item const* focus,
                          Sequence& storage) {
    if (auto const* v = e.as<VarRef>()) {
      return *_slots[v->slot];
    }
    storage = eval(e, focus);
    return storage;
  }

  bool predicateHolds(Expr const& pred, Item const& focus) {
    if (auto const* c = pred.as<Comparison>()) {
      return comparison(*c, &focus).value_or(false);
    }
    Sequence r = eval(pred, &focus);
    if (r.size() == 1 && (std::holds_alternative<std::int64_t>(r[0]) ||
                          std::holds_alternative<Decimal>(r[0]))) {
      throw DynamicError("positional predicates are not supported");
    }
    return effectiveBooleanValue(r);
  }

  bool predicatesHold(std::vector<ExprPtr> const& preds, std::size_t from,
                      NodeRef node) {
    Item focus = node;
    for (std::size_t i = from; i < preds.size(); ++i) {
      if (!predicateHolds(*preds[i], focus)) {
        return false;
      }
    }
    return true;
  }

  Sequence evalNode(Literal const& l, Item const*) {
    return Sequence{std::visit([](auto const& v) { return Item(v); }, l.value)};
  }

  Sequence evalNode(VarRef const& v, Item const*) { return *_slots[v.slot]; }

  Sequence evalNode(ContextItem const&, Item const* focus) {
    if (focus == nullptr) {
      throw DynamicError("the context item is undefined");
    }
    return Sequence{*focus};
  }

  Sequence evalNode(PathExpr const& p, Item const* focus) {
    NodeList nodes = evalNodes(p, focus);
    return Sequence(nodes.begin(), nodes.end());
  }

  NodeList evalNodes(PathExpr const& p, Item const* focus) {
    NodeList current;
    switch (p.start) {
      case PathStart::Context:
        if (focus == nullptr) {
          throw DynamicError("the context item is undefined");
        }
        if (!isNode(*focus)) {
          throw TypeError("path step applied to an atomic value");
        }
        current.push_back(std::get<NodeRef>(*focus));
        break;
      case PathStart::Root:
        for (Document const* doc : _docs.documents()) {
          current.push_back(NodeRef{doc, Document::kDocumentNode});
        }
        break;
      case PathStart::Base: {
        Sequence storage;
        Sequence const& base = evalRef(*p.base, focus, storage);
        current.reserve(base.size());
        for (auto const& item : base) {
          if (!isNode(item)) {
            throw TypeError("path step applied to an atomic value");
          }
          current.push_back(std::get<NodeRef>(item));
        }
        break;
      }
    }
    for (Step const& step : p.steps) {
      current = applyStep(step, current);
    }
    return current;
  }

  NodeList applyStep(Step const& step, NodeList const& ctx) {
    if (ctx.empty()) {
      return {};
    }
    if (_index != nullptr && !step.predicates.empty()) {
      if (auto r = indexedStep(step, ctx)) {
        if (_stats != nullptr) {
          ++_stats->indexedSteps;
        }
        return std::move(*r);
      }
    }
    if (_stats != nullptr && !step.predicates.empty()) {
      ++_stats->scannedSteps;
    }
    NodeList out;
    bool needsSort = false;
    Document const* symDoc = nullptr;
    Symbol sym = xml::kNoSymbol;
    for (NodeRef const& c : ctx) {
      if (c.doc != symDoc) {
        symDoc = c.doc;
        sym = symbolFor(step, *c.doc);
      }
      if (sym == xml::kNoSymbol) {
        continue;
      }
      std::size_t before = out.size();
      appendCandidates(step, c, sym, out);
      if (!step.predicates.empty()) {
        auto keep = std::remove_if(
            out.begin() + std::ptrdiff_t(before), out.end(),
            [&](NodeRef const& n) { return !predicatesHold(step.predicates, 0, n); });
        out.erase(keep, out.end());
      }
      if (before > 0 && before < out.size() &&
          !documentOrderLess(out[before - 1], out[before])) {
        needsSort = true;
      }
    }
    if (needsSort) {
      std::sort(out.begin(), out.end(), documentOrderLess);
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }

  void appendCandidates(Step const& step, NodeRef c, Symbol sym,
                        NodeList& out) {
    Document const& doc = *c.doc;
    if (step.axis == Axis::Descendant) {
      for (NodeId id : descendantsNamed(doc, c.id, step, sym)) {
        out.push_back(NodeRef{&doc, id});
      }
      return;
    }
    Node const& n = doc.node(c.id);
    if (step.attribute) {
      if (n.kind != NodeKind::Element) {
        return;
      }
      NodeId first = doc.firstAttribute(c.id);
      for (NodeId a = first; a < first + n.attributeCount; ++a) {
        if (doc.node(a).name == sym) {
          out.push_back(NodeRef{&doc, a});
        }
      }
      return;
    }
    for (NodeId child : doc.children(c.id)) {
      Node const& cn = doc.node(child);
      if (cn.kind == NodeKind::Element && cn.name == sym) {
        out.push_back(NodeRef{&doc, child});
      }
    }
  }

  // Index-assisted evaluation of `step[pred]...` where `pred` is (or has a
  // conjunct) `relpath = expr` with `expr` independent of the focus. Hits
  // for the values of `expr` are walked back up `relpath` to find the
  // candidate nodes. nullopt means: evaluate by scanning instead.
  std::optional<NodeList> indexedStep(Step const& step, NodeList const& ctx) {
    Expr const& pred = *step.predicates[0];
    std::vector<Expr const*> conjuncts;
    if (auto const* l = pred.as<Logical>(); l && l->op == LogicalOp::And) {
      for (auto const& o : l->operands) {
        conjuncts.push_back(o.get());
      }
    } else {
      conjuncts.push_back(&pred);
    }
    std::size_t chosen = conjuncts.size();
    PathExpr const* probe = nullptr;
    Expr const* other = nullptr;
    CompOp op = CompOp::GeneralEq;
    for (std::size_t k = 0; k < conjuncts.size() && probe == nullptr; ++k) {
      auto const* c = conjuncts[k]->as<Comparison>();
      if (c == nullptr ||
          (c->op != CompOp::ValueEq && c->op != CompOp::GeneralEq)) {
        continue;
      }
      if (isProbePath(*c->lhs, *_index) && !usesFocus(*c->rhs)) {
        probe = c->lhs->as<PathExpr>();
        other = c->rhs.get();
      } else if (isProbePath(*c->rhs, *_index) && !usesFocus(*c->lhs)) {
        probe = c->rhs->as<PathExpr>();
        other = c->lhs.get();
      } else {
        continue;
      }
      chosen = k;
      op = c->op;
    }
    if (probe == nullptr) {
      return std::nullopt;
    }

    Sequence storage;
    Sequence const& rhs = evalRef(*other, nullptr, storage);
    for (auto const& item : rhs) {
      if (!isNode(item) && !std::holds_alternative<std::string>(item)) {
        return std::nullopt;  // typed values compare numerically
      }
    }
    std::vector<std::string> values = atomizeAll(rhs);
    if (op == CompOp::ValueEq && values.size() > 1) {
      return std::nullopt;  // scan reports the type error
    }
    if (values.empty()) {
      return NodeList{};
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    // context nodes grouped per document, ids sorted
    std::vector<std::pair<Document const*, std::vector<NodeId>>> perDoc;
    for (NodeRef const& c : ctx) {
      auto it = std::find_if(perDoc.begin(), perDoc.end(),
                             [&](auto const& p) { return p.first == c.doc; });
      if (it == perDoc.end()) {
        perDoc.emplace_back(c.doc, std::vector<NodeId>{});
        it = perDoc.end() - 1;
      }
      it->second.push_back(c.id);
    }
    Step const& last = probe->steps.back();
    NodeKind lastKind = last.attribute ? NodeKind::Attribute : NodeKind::Element;
    std::size_t hits = 0;
    std::size_t scan = 0;
    std::vector<ValueIndex::Bucket const*> buckets;
    for (auto& [doc, ids] : perDoc) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      Symbol sym = symbolFor(step, *doc);
      ValueIndex::Bucket const* b =
          sym == xml::kNoSymbol
              ? nullptr
              : _index->bucket(*doc, symbolFor(last, *doc), lastKind);
      buckets.push_back(b);
      if (b == nullptr) {
        continue;
      }
      for (auto const& v : values) {
        hits += b->find(v).size();
      }
      for (NodeId id : ids) {
        if (step.axis == Axis::Descendant) {
          scan += descendantsNamed(*doc, id, step, sym).size();
        } else if (step.attribute) {
          scan += doc->node(id).attributeCount;
        } else {
          scan += doc->node(id).childCount;
        }
      }
    }
    if (hits > scan) {
      return std::nullopt;
    }

    bool childOnly = std::all_of(
        probe->steps.begin(), probe->steps.end(),
        [](Step const& s) { return s.axis == Axis::Child; });
    NodeList out;
    std::vector<Symbol> syms;
    std::vector<NodeId> sources;
    for (std::size_t d = 0; d < perDoc.size(); ++d) {
      if (buckets[d] == nullptr) {
        continue;
      }
      Document const& doc = *perDoc[d].first;
      std::vector<NodeId> const& ctxIds = perDoc[d].second;
      syms.clear();
      for (Step const& s : probe->steps) {
        syms.push_back(symbolFor(s, doc));
      }
      sources.clear();
      for (auto const& v : values) {
        for (NodeId hit : buckets[d]->find(v)) {
          walkUp(doc, hit, probe->steps.size() - 1, *probe, syms, sources);
        }
      }
      // hits come in document order per value, so this is usually sorted
      if (!std::is_sorted(sources.begin(), sources.end())) {
        std::sort(sources.begin(), sources.end());
      }
      sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
      Symbol outer = symbolFor(step, doc);
      for (NodeId x : sources) {
        if (!matchesTest(doc, x, step, outer) ||
            !relatedToContext(doc, x, step.axis, ctxIds)) {
          continue;
        }
        Item focus = NodeRef{&doc, x};
        bool ok = true;
        for (std::size_t k = 0; k < conjuncts.size() && ok; ++k) {
          if (k == chosen && op == CompOp::GeneralEq) {
            continue;  // implied by the hit
          }
          if (k == chosen && childOnly) {
            // the hit is in the path result; `eq` holds iff it is the only one
            if (countPath(doc, x, *probe, 0, 2) > 1) {
              throw TypeError(
                  "value comparison operand is a sequence of more than one item");
            }
            continue;
          }
          ok = predicateHolds(*conjuncts[k], focus);
        }
        if (ok && predicatesHold(step.predicates, 1, NodeRef{&doc, x})) {
          out.push_back(NodeRef{&doc, x});
        }
      }
    }
    if (!std::is_sorted(out.begin(), out.end(), documentOrderLess)) {
      std::sort(out.begin(), out.end(), documentOrderLess);
    }
    return out;
  }

  /// Number of nodes `probe.steps[i..]` selects from `node`, counting at
  /// most up to `limit`. Only for child-axis paths, which cannot reach a
  /// node twice.
  std::size_t countPath(Document const& doc, NodeId node, PathExpr const& probe,
                        std::size_t i, std::size_t limit) {
    if (i == probe.steps.size()) {
      return 1;
    }
    Step const& s = probe.steps[i];
    Symbol sym = symbolFor(s, doc);
    Node const& n = doc.node(node);
    if (sym == xml::kNoSymbol || n.kind != NodeKind::Element) {
      return 0;
    }
    std::size_t total = 0;
    auto visit = [&](NodeId c) {
      if (!s.predicates.empty() &&
          !predicatesHold(s.predicates, 0, NodeRef{&doc, c})) {
        return;
      }
      total += countPath(doc, c, probe, i + 1, limit - total);
    };
    if (s.attribute) {
      NodeId first = doc.firstAttribute(node);
      for (NodeId a = first; a < first + n.attributeCount && total < limit; ++a) {
        if (doc.node(a).name == sym) {
          visit(a);
        }
      }
      return total;
    }
    for (NodeId c = n.firstChild; c != xml::kNoNode && total < limit;
         c = doc.node(c).nextSibling) {
      if (doc.node(c).name == sym && doc.kind(c) == NodeKind::Element) {
        visit(c);
      }
    }
    return total;
  }

  bool relatedToContext(Document const& doc, NodeId x, Axis axis,
                        std::vector<NodeId> const& ctxIds) {
    NodeId p = doc.parent(x);
    if (axis == Axis::Child) {
      return p != xml::kNoNode &&
             std::binary_search(ctxIds.begin(), ctxIds.end(), p);
    }
    for (; p != xml::kNoNode; p = doc.parent(p)) {
      if (std::binary_search(ctxIds.begin(), ctxIds.end(), p)) {
        return true;
      }
    }
    return false;
  }

  // `node` matches probe step `i`; collects the nodes the first probe step
  // is evaluated from.
  void walkUp(Document const& doc, NodeId node, std::size_t i,
              PathExpr const& probe, std::vector<Symbol> const& syms,
              std::vector<NodeId>& out) {
    Step const& s = probe.steps[i];
    if (!s.predicates.empty() &&
        !predicatesHold(s.predicates, 0, NodeRef{&doc, node})) {
      return;
    }
    auto visit = [&](NodeId src) {
      if (i == 0) {
        out.push_back(src);
      } else if (matchesTest(doc, src, probe.steps[i - 1], syms[i - 1])) {
        walkUp(doc, src, i - 1, probe, syms, out);
      }
    };
    NodeId p = doc.parent(node);
    if (s.axis == Axis::Child) {
      if (p != xml::kNoNode) {
        visit(p);
      }
      return;
    }
    for (; p != xml::kNoNode; p = doc.parent(p)) {
      visit(p);
    }
  }

  Sequence evalNode(FilterExpr const& f, Item const* focus) {
    Sequence seq = eval(*f.base, focus);
    for (auto const& pred : f.predicates) {
      Sequence kept;
      for (auto const& item : seq) {
        if (predicateHolds(*pred, item)) {
          kept.push_back(item);
        }
      }
      seq = std::move(kept);
    }
    return seq;
  }

  /// Atomized operand of a comparison. Values are viewed in place where
  /// possible; `owned` keeps the rest alive.
  struct Atoms {
    std::vector<std::string_view> values;
    std::forward_list<std::string> owned;
    bool typed = false;  // holds a number, compare through the generic path
  };

  void addAtom(Item const& item, Atoms& atoms) {
    if (auto const* n = std::get_if<NodeRef>(&item)) {
      addNodeAtom(*n, atoms);
    } else if (auto const* s = std::get_if<std::string>(&item)) {
      atoms.values.push_back(*s);
    } else if (std::holds_alternative<bool>(item)) {
      atoms.values.push_back(std::get<bool>(item) ? "true" : "false");
    } else {
      atoms.typed = true;
    }
  }

  void addNodeAtom(NodeRef n, Atoms& atoms) {
    if (auto view = directStringValue(n)) {
      atoms.values.push_back(*view);
      return;
    }
    atoms.owned.push_front(n.doc->stringValue(n.id));
    atoms.values.push_back(atoms.owned.front());
  }

  /// `seq` is set when the operand was evaluated to a sequence; paths and
  /// string literals are atomized directly.
  void operandAtoms(Expr const& e, Item const* focus, Atoms& atoms,
                    Sequence& storage, Sequence const*& seq) {
    if (auto const* p = e.as<PathExpr>()) {
      NodeList nodes = evalNodes(*p, focus);
      for (NodeRef n : nodes) {
        addNodeAtom(n, atoms);
      }
      seq = nullptr;
      return;
    }
    if (auto const* l = e.as<Literal>()) {
      if (auto const* s = std::get_if<std::string>(&l->value)) {
        atoms.values.push_back(*s);
        seq = nullptr;
        return;
      }
    }
    seq = &evalRef(e, focus, storage);
    for (auto const& item : *seq) {
      addAtom(item, atoms);
    }
  }

  std::optional<bool> comparison(Comparison const& c, Item const* focus) {
    Atoms la;
    Atoms ra;
    Sequence ls;
    Sequence rs;
    Sequence const* lseq = nullptr;
    Sequence const* rseq = nullptr;
    operandAtoms(*c.lhs, focus, la, ls, lseq);
    operandAtoms(*c.rhs, focus, ra, rs, rseq);
    bool valueComparison = c.op == CompOp::ValueEq || c.op == CompOp::ValueNe;
    if (la.typed || ra.typed) {
      if (lseq == nullptr) {
        ls = eval(*c.lhs, focus);
        lseq = &ls;
      }
      if (rseq == nullptr) {
        rs = eval(*c.rhs, focus);
        rseq = &rs;
      }
      if (valueComparison) {
        return valueCompare(*lseq, *rseq, c.op);
      }
      return generalCompare(*lseq, *rseq, c.op);
    }
    auto const& l = la.values;
    auto const& r = ra.values;
    bool wantEqual = c.op == CompOp::ValueEq || c.op == CompOp::GeneralEq;
    if (valueComparison) {
      if (l.empty() || r.empty()) {
        return std::nullopt;
      }
      if (l.size() > 1 || r.size() > 1) {
        throw TypeError("value comparison operand is a sequence of " +
                        std::to_string(std::max(l.size(), r.size())) +
                        " items");
      }
      return (l[0] == r[0]) == wantEqual;
    }
    if (l.empty() || r.empty()) {
      return false;
    }
    if (!wantEqual) {
      std::string_view v = l.front();
      auto same = [&](std::string_view s) { return s == v; };
      return !(std::all_of(l.begin(), l.end(), same) &&
               std::all_of(r.begin(), r.end(), same));
    }
    if (l.size() * r.size() <= 32) {
      for (auto a : l) {
        if (std::find(r.begin(), r.end(), a) != r.end()) {
          return true;
        }
      }
      return false;
    }
    auto const& small = l.size() < r.size() ? l : r;
    auto const& large = l.size() < r.size() ? r : l;
    std::unordered_set<std::string_view> set(small.begin(), small.end());
    return std::any_of(large.begin(), large.end(),
                       [&](std::string_view s) { return set.contains(s); });
  }

  Sequence evalNode(Comparison const& c, Item const* focus) {
    auto r = comparison(c, focus);
    if (!r) {
      return {};
    }
    return Sequence{*r};
  }

  Sequence evalNode(Logical const& l, Item const* focus) {
    bool isAnd = l.op == LogicalOp::And;
    for (auto const& operand : l.operands) {
      bool v;
      if (auto const* c = operand->as<Comparison>()) {
        v = comparison(*c, focus).value_or(false);
      } else {
        v = effectiveBooleanValue(eval(*operand, focus));
      }
      if (v != isAnd) {
        return Sequence{v};
      }
    }
    return Sequence{isAnd};
  }

  Sequence evalNode(FunctionCall const& f, Item const* focus) {
    Sequence storage;
    Sequence const& arg = evalRef(*f.args[0], focus, storage);
    if (f.name == "distinct-values") {
      return distinctValues(arg);
    }
    if (f.name == "sum") {
      return Sequence{sum(arg)};
    }
    if (f.name == "exists") {
      return Sequence{!arg.empty()};
    }
    if (f.name == "count") {
      return Sequence{std::int64_t(arg.size())};
    }
    // string()
    if (arg.size() > 1) {
      throw TypeError("string() of a sequence of " +
                      std::to_string(arg.size()) + " items");
    }
    return Sequence{arg.empty() ? std::string() : atomize(arg.front())};
  }

  Sequence evalNode(SequenceExpr const& s, Item const* focus) {
    Sequence out;
    for (auto const& item : s.items) {
      Sequence part = eval(*item, focus);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return out;
  }

  std::string evalTemplate(std::vector<ContentPart> const& parts,
                           Item const* focus) {
    std::string out;
    for (auto const& part : parts) {
      if (!part.expr) {
        out += part.text;
        continue;
      }
      Sequence seq = eval(*part.expr, focus);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) {
          out.push_back(' ');
        }
        appendAtomized(seq[i], out);
      }
    }
    return out;
  }

  Sequence evalNode(ElementConstructor const& c, Item const* focus) {
    xml::DocumentBuilder b;
    b.startElement(c.name);
    std::vector<std::string> names;
    auto addAttribute = [&](std::string_view name, std::string_view value) {
      if (std::find(names.begin(), names.end(), name) != names.end()) {
        throw DynamicError("duplicate attribute " + std::string(name) +
                           " in constructed element <" + c.name + ">");
      }
      names.emplace_back(name);
      b.attribute(name, value);
    };
    for (auto const& a : c.attributes) {
      addAttribute(a.name, evalTemplate(a.parts, focus));
    }
    std::vector<Sequence> values(c.content.size());
    bool seenContent = false;
    for (std::size_t i = 0; i < c.content.size(); ++i) {
      ContentPart const& part = c.content[i];
      if (!part.expr) {
        seenContent = true;
        continue;
      }
      values[i] = eval(*part.expr, focus);
      for (auto const& item : values[i]) {
        auto const* n = std::get_if<NodeRef>(&item);
        if (n != nullptr && n->doc->kind(n->id) == NodeKind::Attribute) {
          if (seenContent) {
            throw TypeError("attribute node after element content in <" +
                            c.name + ">");
          }
          addAttribute(n->doc->name(n->id), n->doc->value(n->id));
        } else {
          seenContent = true;
        }
      }
    }
    for (std::size_t i = 0; i < c.content.size(); ++i) {
      if (!c.content[i].expr) {
        b.text(c.content[i].text);
        continue;
      }
      bool previousAtomic = false;
      for (auto const& item : values[i]) {
        if (auto const* n = std::get_if<NodeRef>(&item)) {
          previousAtomic = false;
          if (n->doc->kind(n->id) != NodeKind::Attribute) {
            b.copy(*n->doc, n->id);
          }
          continue;
        }
        if (previousAtomic) {
          b.text(" ");
        }
        std::string text = atomize(item);
        if (!text.empty()) {
          b.text(text);
        }
        previousAtomic = true;
      }
    }
    b.endElement();
    auto doc = std::make_unique<Document>(b.finish());
    NodeRef root{doc.get(), doc->root()};
    _arena.push_back(std::move(doc));
    return Sequence{root};
  }

  struct FlworRun {
    Flwor const& flwor;
    Item const* focus;
    std::vector<std::optional<Sequence>> cache;
    Sequence out;
    std::vector<std::vector<Sequence>> rows;
  };

  Sequence evalNode(Flwor const& f, Item const* focus) {
    FlworRun run{f, focus, std::vector<std::optional<Sequence>>(f.clauses.size()),
                 {}, {}};
    bindClause(run, 0);
    if (!f.groupBy) {
      return std::move(run.out);
    }
    std::vector<std::size_t> keyColumns;
    for (VarRef const& key : f.groupBy->keys) {
      for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        if (f.clauses[i].var.slot == key.slot) {
          keyColumns.push_back(i);
        }
      }
    }
    auto groups = groupTupleRows(run.rows, keyColumns);
    run.rows.clear();
    for (auto const& group : groups) {
      for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        _slots[f.clauses[i].var.slot] = &group[i];
      }
      appendTo(run.out, eval(*f.ret, focus));
    }
    return std::move(run.out);
  }

  static void appendTo(Sequence& out, Sequence&& part) {
    if (out.empty()) {
      out = std::move(part);
      return;
    }
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }

  void bindClause(FlworRun& run, std::size_t i) {
    Flwor const& f = run.flwor;
    if (i == f.clauses.size()) {
      if (f.where && !effectiveBooleanValue(eval(*f.where, run.focus))) {
        return;
      }
      if (f.groupBy) {
        std::vector<Sequence> row;
        row.reserve(f.clauses.size());
        for (auto const& c : f.clauses) {
          row.push_back(*_slots[c.var.slot]);
        }
        run.rows.push_back(std::move(row));
      } else {
        appendTo(run.out, eval(*f.ret, run.focus));
      }
      return;
    }
    Clause const& c = f.clauses[i];
    Sequence local;
    Sequence const* value;
    if (c.invariant) {
      if (!run.cache[i]) {
        run.cache[i] = eval(*c.expr, run.focus);
      }
      value = &*run.cache[i];
    } else {
      local = eval(*c.expr, run.focus);
      value = &local;
    }
    if (c.kind == ClauseKind::Let) {
      _slots[c.var.slot] = value;
      bindClause(run, i + 1);
      return;
    }
    Sequence one(1);
    _slots[c.var.slot] = &one;
    for (auto const& item : *value) {
      one[0] = item;
      bindClause(run, i + 1);
    }
  }

  DocumentSet const& _docs;
  ValueIndex const* _index;
  EvalStats* _stats;
  std::vector<Sequence const*> _slots;
  std::vector<std::pair<Document const*, Symbol>> _symbols;
  std::vector<std::unique_ptr<Document>> _arena;
};

}  // namespace

QueryResult evaluate(Query const& query, DocumentSet const& docs,
                     ValueIndex const* index, EvalStats* stats) {
  Evaluator ev(query, docs, index, stats);
  QueryResult result;
  result.items = ev.eval(*query.body, nullptr);
  result.constructed = ev.takeArena();
  return result;
}

}  // namespace xocube::query
