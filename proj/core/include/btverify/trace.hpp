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

#ifndef BTVERIFY_TRACE_HPP_
#define BTVERIFY_TRACE_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "btverify/bus.hpp"

namespace btverify {

/// One trace line: {"t":..,"connection":"a->b","direction":"request",
/// "procedure":..,"payload":{..},"seq":..} plus "fault":true on fault
/// replies. Field order is fixed so traces are byte-stable.
std::string message_to_json(const Message& m);

/// Throws ParseError on malformed lines.
Message message_from_json(const std::string& line);

/// Appends one JSON line per message; safe to share across threads.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& file);

  void write(const Message& m);
  void flush();
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

/// Streams a JSON-lines trace; blank lines are skipped, anything else
/// malformed throws ParseError with the line number.
void for_each_trace_message(std::istream& in,
                            const std::function<void(const Message&)>& fn);

std::vector<Message> read_trace_file(const std::filesystem::path& file);

}  // namespace btverify

#endif  // BTVERIFY_TRACE_HPP_
