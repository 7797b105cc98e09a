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

#include "xocube/cube/DebugExport.h"

namespace xocube::cube {

xml::Document exportDebugXml(CubeInstance const& instance) {
  CubeSchema const& schema = instance.schema;
  xml::DocumentBuilder b;
  b.startElement("instance").attribute("fact", schema.factName);
  b.startElement("schema");
  for (MeasureSchema const& m : schema.measures) {
    b.startElement("measure")
        .attribute("name", m.name)
        .attribute("kind",
                   m.kind == MeasureKind::Integer ? "integer" : "decimal")
        .endElement();
  }
  for (DimensionSchema const& d : schema.dimensions) {
    b.startElement("dimension").attribute("name", d.name);
    for (std::string const& l : d.levels) {
      b.startElement("level").attribute("name", l).endElement();
    }
    b.endElement();
  }
  b.endElement();
  for (std::size_t d = 0; d < instance.members.size(); ++d) {
    b.startElement("members").attribute("dimension",
                                        schema.dimensions.at(d).name);
    for (Member const& m : instance.members[d]) {
      b.startElement("member")
          .attribute("id", m.id)
          .attribute("name", m.name)
          .attribute("level", m.level);
      if (m.parent) {
        b.attribute("parent", *m.parent);
      }
      b.endElement();
    }
    b.endElement();
  }
  b.startElement("facts");
  for (FactRecord const& f : instance.facts) {
    b.startElement("fact");
    for (std::size_t m = 0; m < f.measures.size(); ++m) {
      b.attribute(schema.measures.at(m).name, f.measures[m].toFixedString());
    }
    for (std::size_t d = 0; d < f.leafRefs.size(); ++d) {
      b.attribute(schema.dimensions.at(d).name, f.leafRefs[d]);
    }
    b.endElement();
  }
  b.endElement();
  b.endElement();
  return b.finish();
}

}  // namespace xocube::cube
