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

#ifndef BTVERIFY_TOML_HPP_
#define BTVERIFY_TOML_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace btverify::toml {

// Minimal TOML subset, enough for scenario configs: comments, bare keys,
// [table] and [[array-of-table]] headers (dotted paths allowed), basic and
// literal strings, integers, floats, booleans, single-level arrays.
// No dates, no inline tables, no multi-line strings.

class Value;
using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

class Value {
 public:
  using Storage =
      std::variant<bool, std::int64_t, double, std::string, Array, Table>;

  Value() : storage_(std::make_shared<Storage>(Table{})) {}
  explicit Value(Storage s) : storage_(std::make_shared<Storage>(std::move(s))) {}

  bool is_bool() const { return std::holds_alternative<bool>(*storage_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(*storage_); }
  bool is_float() const { return std::holds_alternative<double>(*storage_); }
  bool is_string() const { return std::holds_alternative<std::string>(*storage_); }
  bool is_array() const { return std::holds_alternative<Array>(*storage_); }
  bool is_table() const { return std::holds_alternative<Table>(*storage_); }

  bool as_bool() const;
  std::int64_t as_int() const;
  double as_number() const;  // int or float
  const std::string& as_string() const;
  const Array& as_array() const;
  const Table& as_table() const;

  Storage& storage() { return *storage_; }

 private:
  // shared_ptr keeps Value copyable while Array/Table recursively contain
  // Values (incomplete type at declaration).
  std::shared_ptr<Storage> storage_;
};

/// Throws ParseError with line information on anything outside the subset.
Table parse(const std::string& text);
Table parse_file(const std::filesystem::path& path);

// Typed lookup helpers; `get_*` throw ParseError when the key is present
// with the wrong type, `*_or` fall back when it is absent.
const Value* find(const Table& table, const std::string& key);
bool get_bool_or(const Table& table, const std::string& key, bool fallback);
std::int64_t get_int_or(const Table& table, const std::string& key,
                        std::int64_t fallback);
double get_number_or(const Table& table, const std::string& key, double fallback);
std::string get_string_or(const Table& table, const std::string& key,
                          const std::string& fallback);
std::string get_string(const Table& table, const std::string& key,
                       const std::string& context);

}  // namespace btverify::toml

#endif  // BTVERIFY_TOML_HPP_
