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

#include "xml_util.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "btverify/errors.hpp"

namespace btverify::internal {

namespace {

namespace pt = boost::property_tree;

XmlElement convert(const std::string& name, const pt::ptree& tree) {
  XmlElement out;
  out.name = name;
  for (const auto& [key, child] : tree) {
    if (key == "<xmlattr>") {
      for (const auto& [attr, value] : child) {
        out.attributes.emplace(attr, value.get_value<std::string>());
      }
    } else if (key == "<xmltext>" || key == "<xmlcomment>") {
      continue;  // text content is not part of the supported subset
    } else {
      out.children.push_back(convert(key, child));
    }
  }
  return out;
}

}  // namespace

XmlElement parse_xml_document(const std::string& document) {
  pt::ptree tree;
  std::istringstream stream(document);
  try {
    pt::read_xml(stream, tree,
                 pt::xml_parser::trim_whitespace | pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("malformed XML: ") + e.what());
  }
  // read_xml yields a pseudo-root whose single child is the document element.
  for (const auto& [key, child] : tree) {
    if (key != "<xmlattr>" && key != "<xmlcomment>") {
      return convert(key, child);
    }
  }
  throw ParseError("malformed XML: document has no root element");
}

}  // namespace btverify::internal
