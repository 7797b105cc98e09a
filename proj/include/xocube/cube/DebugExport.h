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

#include "xocube/cube/Cube.h"
#include "xocube/xml/Document.h"

namespace xocube::cube {

/// Single-document dump of a canonical instance, for inspection only:
///
///   <instance fact="order">
///     <schema>
///       <measure name="quantity" kind="integer"/>
///       <dimension name="customer"><level name="customer"/>...</dimension>
///     </schema>
///     <members dimension="customer">
///       <member id="c1" name="Continent1" level="continent"/> ...
///     </members>
///     <facts><fact quantity="3" price="125.67" customer="c42" .../></facts>
///   </instance>
xml::Document exportDebugXml(CubeInstance const& instance);

}  // namespace xocube::cube
