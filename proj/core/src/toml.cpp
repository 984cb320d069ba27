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

#include "btverify/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "btverify/errors.hpp"

namespace btverify::toml {

bool Value::as_bool() const {
  if (!is_bool()) throw ParseError("TOML value is not a boolean");
  return std::get<bool>(*storage_);
}

std::int64_t Value::as_int() const {
  if (!is_int()) throw ParseError("TOML value is not an integer");
  return std::get<std::int64_t>(*storage_);
}

double Value::as_number() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(*storage_));
  if (is_float()) return std::get<double>(*storage_);
  throw ParseError("TOML value is not a number");
}

const std::string& Value::as_string() const {
  if (!is_string()) throw ParseError("TOML value is not a string");
  return std::get<std::string>(*storage_);
}

const Array& Value::as_array() const {
  if (!is_array()) throw ParseError("TOML value is not an array");
  return std::get<Array>(*storage_);
}

const Table& Value::as_table() const {
  if (!is_table()) throw ParseError("TOML value is not a table");
  return std::get<Table>(*storage_);
}

namespace {

class Cursor {
 public:
  Cursor(const std::string& text, size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  bool consume(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("TOML line " + std::to_string(line_) + ": " + what);
  }
  size_t pos() const { return pos_; }

 private:
  const std::string& text_;
  size_t pos_ = 0;
  size_t line_;
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_key(Cursor& c) {
  c.skip_space();
  std::string key;
  if (c.peek() == '"' || c.peek() == '\'') {
    const char quote = c.take();
    while (c.peek() != quote) {
      if (c.peek() == '\0') c.fail("unterminated quoted key");
      key.push_back(c.take());
    }
    c.take();
    return key;
  }
  while (is_bare_key_char(c.peek())) {
    key.push_back(c.take());
  }
  if (key.empty()) c.fail("expected a key");
  return key;
}

std::string parse_basic_string(Cursor& c) {
  std::string out;
  for (;;) {
    const char ch = c.peek();
    if (ch == '\0') c.fail("unterminated string");
    c.take();
    if (ch == '"') return out;
    if (ch == '\\') {
      const char esc = c.take();
      switch (esc) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: c.fail(std::string("unsupported escape \\") + esc);
      }
    } else {
      out.push_back(ch);
    }
  }
}

Value parse_value(Cursor& c);

Value parse_array(Cursor& c) {
  Array items;
  for (;;) {
    c.skip_space();
    if (c.consume(']')) break;
    items.push_back(parse_value(c));
    c.skip_space();
    if (c.consume(',')) continue;
    if (c.consume(']')) break;
    c.fail("expected ',' or ']' in array");
  }
  return Value(Value::Storage(std::move(items)));
}

Value parse_value(Cursor& c) {
  c.skip_space();
  const char ch = c.peek();
  if (ch == '"') {
    c.take();
    return Value(Value::Storage(parse_basic_string(c)));
  }
  if (ch == '\'') {
    c.take();
    std::string out;
    while (c.peek() != '\'') {
      if (c.peek() == '\0') c.fail("unterminated literal string");
      out.push_back(c.take());
    }
    c.take();
    return Value(Value::Storage(std::move(out)));
  }
  if (ch == '[') {
    c.take();
    return parse_array(c);
  }
  if (ch == '{') {
    c.fail("inline tables are not supported");
  }
  // bare token: number or boolean
  std::string token;
  while (c.peek() != '\0' && c.peek() != ',' && c.peek() != ']' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t') {
    token.push_back(c.take());
  }
  if (token == "true") return Value(Value::Storage(true));
  if (token == "false") return Value(Value::Storage(false));
  if (token.empty()) c.fail("expected a value");
  const bool is_float = token.find_first_of(".eE") != std::string::npos;
  try {
    if (is_float) {
      return Value(Value::Storage(std::stod(token)));
    }
    size_t used = 0;
    const std::int64_t i = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return Value(Value::Storage(i));
  } catch (const std::exception&) {
    c.fail("bad value token '" + token + "'");
  }
}

// One logical line: physical lines joined while inside an unclosed array.
struct LogicalLine {
  std::string text;
  size_t line_no = 0;
};

std::vector<LogicalLine> logical_lines(const std::string& text) {
  std::vector<LogicalLine> out;
  std::istringstream in(text);
  std::string physical;
  size_t line_no = 0;
  LogicalLine pending;
  int bracket_depth = 0;
  bool in_string = false;
  char string_quote = '\0';

  while (std::getline(in, physical)) {
    ++line_no;
    if (!physical.empty() && physical.back() == '\r') physical.pop_back();

    std::string stripped;
    stripped.reserve(physical.size());
    for (size_t i = 0; i < physical.size(); ++i) {
      const char ch = physical[i];
      if (in_string) {
        stripped.push_back(ch);
        if (ch == string_quote && (string_quote == '\'' || physical[i - 1] != '\\')) {
          in_string = false;
        }
        continue;
      }
      if (ch == '#') break;  // comment
      if (ch == '"' || ch == '\'') {
        in_string = true;
        string_quote = ch;
      } else if (ch == '[') {
        ++bracket_depth;
      } else if (ch == ']') {
        --bracket_depth;
      }
      stripped.push_back(ch);
    }
    if (in_string) {
      throw ParseError("TOML line " + std::to_string(line_no) +
                       ": unterminated string");
    }

    if (pending.text.empty()) {
      pending.text = stripped;
      pending.line_no = line_no;
    } else {
      pending.text += " " + stripped;
    }
    // Header lines like [sim] legitimately balance their brackets; values
    // spanning lines keep depth positive until the closing bracket.
    if (bracket_depth > 0) {
      continue;
    }
    bracket_depth = 0;
    if (pending.text.find_first_not_of(" \t") != std::string::npos) {
      out.push_back(pending);
    }
    pending = LogicalLine{};
  }
  if (!pending.text.empty() &&
      pending.text.find_first_not_of(" \t") != std::string::npos) {
    throw ParseError("TOML line " + std::to_string(pending.line_no) +
                     ": unterminated value");
  }
  return out;
}

std::vector<std::string> split_dotted(const std::string& path, size_t line_no) {
  std::vector<std::string> parts;
  std::string current;
  for (const char ch : path) {
    if (ch == '.') {
      if (current.empty()) {
        throw ParseError("TOML line " + std::to_string(line_no) +
                         ": empty segment in header '" + path + "'");
      }
      parts.push_back(current);
      current.clear();
    } else if (ch == ' ' || ch == '\t') {
      continue;
    } else {
      current.push_back(ch);
    }
  }
  if (current.empty()) {
    throw ParseError("TOML line " + std::to_string(line_no) + ": bad header '" +
                     path + "'");
  }
  parts.push_back(current);
  return parts;
}

Table* descend(Table& root, const std::vector<std::string>& path, size_t line_no) {
  Table* current = &root;
  for (const auto& part : path) {
    Value& slot = (*current)[part];
    if (slot.is_array()) {
      // [[x]] then [x.y]: descend into the last array element.
      Array& arr = std::get<Array>(slot.storage());
      if (arr.empty() || !arr.back().is_table()) {
        throw ParseError("TOML line " + std::to_string(line_no) +
                         ": header conflicts with array '" + part + "'");
      }
      current = &std::get<Table>(arr.back().storage());
    } else if (slot.is_table()) {
      current = &std::get<Table>(slot.storage());
    } else {
      throw ParseError("TOML line " + std::to_string(line_no) +
                       ": header redefines non-table key '" + part + "'");
    }
  }
  return current;
}

}  // namespace

Table parse(const std::string& text) {
  Table root;
  Table* current = &root;

  for (const auto& line : logical_lines(text)) {
    Cursor c(line.text, line.line_no);
    c.skip_space();
    if (c.peek() == '[') {
      c.take();
      const bool array_of_tables = c.consume('[');
      std::string header;
      while (c.peek() != ']' && c.peek() != '\0') header.push_back(c.take());
      if (!c.consume(']')) c.fail("missing ']' in table header");
      if (array_of_tables && !c.consume(']')) c.fail("missing ']]' in header");
      if (!c.at_end()) c.fail("trailing characters after table header");

      auto path = split_dotted(header, line.line_no);
      if (array_of_tables) {
        const std::string leaf = path.back();
        path.pop_back();
        Table* parent = descend(root, path, line.line_no);
        Value& slot = (*parent)[leaf];
        if (slot.is_table() && slot.as_table().empty()) {
          slot = Value(Value::Storage(Array{}));
        }
        if (!slot.is_array()) c.fail("'" + leaf + "' is not an array of tables");
        Array& arr = std::get<Array>(slot.storage());
        arr.emplace_back(Value(Value::Storage(Table{})));
        current = &std::get<Table>(arr.back().storage());
      } else {
        current = descend(root, path, line.line_no);
      }
      continue;
    }

    const std::string key = parse_key(c);
    if (!c.consume('=')) c.fail("expected '=' after key '" + key + "'");
    Value value = parse_value(c);
    if (!c.at_end()) c.fail("trailing characters after value for '" + key + "'");
    if (current->count(key) != 0) c.fail("duplicate key '" + key + "'");
    (*current)[key] = std::move(value);
  }
  return root;
}

Table parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

const Value* find(const Table& table, const std::string& key) {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

bool get_bool_or(const Table& table, const std::string& key, bool fallback) {
  const Value* v = find(table, key);
  return v == nullptr ? fallback : v->as_bool();
}

std::int64_t get_int_or(const Table& table, const std::string& key,
                        std::int64_t fallback) {
  const Value* v = find(table, key);
  return v == nullptr ? fallback : v->as_int();
}

double get_number_or(const Table& table, const std::string& key, double fallback) {
  const Value* v = find(table, key);
  return v == nullptr ? fallback : v->as_number();
}

std::string get_string_or(const Table& table, const std::string& key,
                          const std::string& fallback) {
  const Value* v = find(table, key);
  return v == nullptr ? fallback : v->as_string();
}

std::string get_string(const Table& table, const std::string& key,
                       const std::string& context) {
  const Value* v = find(table, key);
  if (v == nullptr) {
    throw ParseError(context + ": missing required key '" + key + "'");
  }
  return v->as_string();
}

}  // namespace btverify::toml
