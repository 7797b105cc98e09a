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

#include "xocube/olap/Olap.h"

#include "xocube/Errors.h"

namespace xocube::olap {

namespace {

xml::NodeId childNamed(xml::Document const& doc, xml::NodeId parent,
                       std::string_view name) {
  for (xml::NodeId c : doc.children(parent)) {
    if (doc.kind(c) == xml::NodeKind::Element && doc.name(c) == name) {
      return c;
    }
  }
  return xml::kNoNode;
}

}  // namespace

cube::GroupTable extractGroupTable(query::Sequence const& result,
                                   OlapRequest const& request) {
  cube::GroupTable table;
  table.keyLevels = request.keyLevels;
  for (std::size_t i = 0; i < result.size(); ++i) {
    auto const* node = std::get_if<query::NodeRef>(&result[i]);
    if (node == nullptr || node->doc->kind(node->id) != xml::NodeKind::Element ||
        node->doc->name(node->id) != "group") {
      throw MalformedResult("result item " + std::to_string(i + 1) +
                            " is not a <group> element");
    }
    xml::Document const& doc = *node->doc;
    std::vector<std::string> key;
    for (auto const& level : request.keyLevels) {
      xml::NodeId child = childNamed(doc, node->id, level.level);
      if (child == xml::kNoNode) {
        throw MalformedResult("group " + std::to_string(i + 1) + " has no <" +
                              level.level + "> child");
      }
      key.push_back(doc.stringValue(child));
    }
    xml::NodeId sumNode = childNamed(doc, node->id, "sum");
    if (sumNode == xml::kNoNode) {
      throw MalformedResult("group " + std::to_string(i + 1) +
                            " has no <sum> child");
    }
    std::string text = doc.stringValue(sumNode);
    auto value = Decimal::parse(text);
    if (!value) {
      throw MalformedResult("group " + std::to_string(i + 1) +
                            " has a non-numeric sum '" + text + "'");
    }
    if (!table.rows.emplace(std::move(key), *value).second) {
      throw MalformedResult("group " + std::to_string(i + 1) +
                            " repeats an earlier key");
    }
  }
  return table;
}

}  // namespace xocube::olap
