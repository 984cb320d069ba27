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

#ifndef BTVERIFY_BUS_HPP_
#define BTVERIFY_BUS_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "btverify/value.hpp"

namespace btverify {

/// Directed client -> server pair naming one conversation.
struct ConnectionId {
  std::string client;
  std::string server;

  auto operator<=>(const ConnectionId&) const = default;

  /// "client->server", the form used in trace files and manifests.
  std::string str() const { return client + "->" + server; }
  static ConnectionId from_string(const std::string& s);  // throws ParseError
};

enum class Direction { Request, Reply };

std::string_view to_string(Direction d);

/// One intercepted request or reply. A reply shares the seq of its request;
/// seq starts at 1 and increases per connection.
struct Message {
  ConnectionId connection;
  Direction direction = Direction::Request;
  std::string procedure;
  Payload payload;
  std::uint64_t seq = 0;
  bool fault = false;  // reply produced by a handler fault
  double t = 0.0;      // virtual time (tick index) when deterministic
};

/// Identity of the requester, available to handlers for access control.
struct QueryContext {
  std::string client;
  std::string procedure;
};

using RequestHandler = std::function<Payload(const QueryContext&, const Payload&)>;
using MessageSink = std::function<void(const Message&)>;
using HookId = std::uint64_t;

/// Synchronous query-pattern bus: named endpoints answer procedure calls;
/// every request/reply on a connection is copied, in transport order, to
/// the port-monitor hooks attached to that connection.
///
/// Queries on one connection are totally ordered (the connection is held
/// for the full request/reply exchange). The bus itself may be used from
/// multiple threads; handlers run on the caller's thread.
class Bus {
 public:
  Bus() = default;
  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  /// Throws ProtocolError when the name is already registered.
  void register_endpoint(const std::string& name, RequestHandler handler);

  /// Throws WiringError when the name is unknown.
  void unregister_endpoint(const std::string& name);

  bool has_endpoint(const std::string& name) const;

  /// Blocks until the handler returns. Emits the Request before the handler
  /// runs and the Reply before this call returns. A handler fault emits a
  /// fault-tagged Reply and rethrows as QueryError. Unknown endpoints throw
  /// WiringError.
  Payload query(const std::string& from, const std::string& to,
                const std::string& procedure, const Payload& args = {});

  /// The sink starts receiving from the next message on the connection.
  HookId attach_portmonitor(const ConnectionId& connection, MessageSink sink);

  /// Throws WiringError on an unknown hook id.
  void detach(HookId id);

  /// Observes every message on every connection (trace recording). Taps
  /// fire after connection hooks.
  HookId attach_tap(MessageSink sink);

  /// Sets the virtual timestamp stamped on subsequent messages.
  void set_time(double t) { time_.store(t); }
  double time() const { return time_.load(); }

 private:
  struct Hook {
    HookId id;
    MessageSink sink;
  };
  struct ConnectionState {
    std::mutex mutex;           // serializes the request/reply exchange
    std::uint64_t next_seq = 1;
    std::vector<Hook> hooks;
  };

  ConnectionState& connection_state(const ConnectionId& id);
  void emit(ConnectionState& state, const Message& m);

  // Lock order: registry_mutex_ before ConnectionState::mutex before
  // taps_mutex_; never the reverse.
  mutable std::mutex registry_mutex_;
  std::mutex taps_mutex_;
  std::map<std::string, RequestHandler> endpoints_;
  std::map<ConnectionId, std::unique_ptr<ConnectionState>> connections_;
  std::vector<Hook> taps_;
  std::atomic<std::uint64_t> next_hook_id_{1};
  std::atomic<double> time_{0.0};
};

}  // namespace btverify

#endif  // BTVERIFY_BUS_HPP_
