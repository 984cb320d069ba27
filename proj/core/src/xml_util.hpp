// Copyright 2026 The btverify Authors
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

// Internal: thin element/attribute view over an XML document. Backed by
// boost::property_tree; not part of the installed API.

#ifndef BTVERIFY_SRC_XML_UTIL_HPP_
#define BTVERIFY_SRC_XML_UTIL_HPP_

#include <map>
#include <string>
#include <vector>

namespace btverify::internal {

struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attributes;
  std::vector<XmlElement> children;  // element children, document order

  const std::string* find_attribute(const std::string& key) const {
    auto it = attributes.find(key);
    return it == attributes.end() ? nullptr : &it->second;
  }
};

/// Parses a whole document and returns its root element.
/// Throws ParseError on malformed XML.
XmlElement parse_xml_document(const std::string& document);

}  // namespace btverify::internal

#endif  // BTVERIFY_SRC_XML_UTIL_HPP_
