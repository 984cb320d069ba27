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

#include "btverify/trace.hpp"

#include <istream>

#include <nlohmann/json.hpp>

#include "btverify/errors.hpp"

namespace btverify {

namespace {

using json = nlohmann::ordered_json;

json scalar_to_json(const Scalar& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  if (const double* d = std::get_if<double>(&v)) return *d;
  return std::get<std::string>(v);
}

Scalar scalar_from_json(const json& j, const std::string& context) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ParseError(context + ": payload values must be boolean, number or string");
}

}  // namespace

std::string message_to_json(const Message& m) {
  json j;
  j["t"] = m.t;
  j["connection"] = m.connection.str();
  j["direction"] = std::string(to_string(m.direction));
  j["procedure"] = m.procedure;
  json payload = json::object();
  for (const auto& [key, value] : m.payload) {
    payload[key] = scalar_to_json(value);
  }
  j["payload"] = std::move(payload);
  j["seq"] = m.seq;
  if (m.fault) {
    j["fault"] = true;
  }
  return j.dump();
}

Message message_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed trace line: ") + e.what());
  }
  if (!j.is_object()) {
    throw ParseError("malformed trace line: not a JSON object");
  }
  Message m;
  try {
    m.t = j.at("t").get<double>();
    m.connection = ConnectionId::from_string(j.at("connection").get<std::string>());
    const std::string dir = j.at("direction").get<std::string>();
    if (dir == "request") {
      m.direction = Direction::Request;
    } else if (dir == "reply") {
      m.direction = Direction::Reply;
    } else {
      throw ParseError("malformed trace line: bad direction '" + dir + "'");
    }
    m.procedure = j.at("procedure").get<std::string>();
    const json& payload = j.at("payload");
    if (!payload.is_object()) {
      throw ParseError("malformed trace line: payload is not an object");
    }
    for (const auto& [key, value] : payload.items()) {
      m.payload[key] = scalar_from_json(value, "trace line");
    }
    m.seq = j.at("seq").get<std::uint64_t>();
    m.fault = j.value("fault", false);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed trace line: ") + e.what());
  }
  return m;
}

TraceWriter::TraceWriter(const std::filesystem::path& file) : path_(file) {
  out_.open(file);
  if (!out_) {
    throw ConfigError("cannot open trace file for writing: " + file.string());
  }
}

void TraceWriter::write(const Message& m) {
  std::lock_guard lock(mutex_);
  out_ << message_to_json(m) << '\n';
}

void TraceWriter::flush() {
  std::lock_guard lock(mutex_);
  out_.flush();
}

void for_each_trace_message(std::istream& in,
                            const std::function<void(const Message&)>& fn) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      fn(message_from_json(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::vector<Message> read_trace_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open trace file: " + file.string());
  }
  std::vector<Message> out;
  for_each_trace_message(in, [&out](const Message& m) { out.push_back(m); });
  return out;
}

}  // namespace btverify
